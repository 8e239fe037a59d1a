import sys

from extremogram.cli import main

sys.exit(main())
