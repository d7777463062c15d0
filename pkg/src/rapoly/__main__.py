import sys

from rapoly.cli import main

sys.exit(main())
