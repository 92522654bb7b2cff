import sys

from geomkit_lib.cli.main import main

sys.exit(main())
