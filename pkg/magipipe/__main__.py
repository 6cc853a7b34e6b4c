import sys

from magipipe.cli import main

sys.exit(main())
