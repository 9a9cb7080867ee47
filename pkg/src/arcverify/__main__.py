import sys

from arcverify.cli import main

sys.exit(main())
