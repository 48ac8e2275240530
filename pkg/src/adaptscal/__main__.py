import sys

from adaptscal.harness.cli import main

sys.exit(main())
