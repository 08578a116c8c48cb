import sys

from lockgraph.cli import main

sys.exit(main())
