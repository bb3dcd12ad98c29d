import sys

from mixedspec.cli import main

sys.exit(main())
