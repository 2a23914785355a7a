import sys

from multired.cli import main

sys.exit(main())
