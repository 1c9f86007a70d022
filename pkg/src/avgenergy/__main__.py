import sys

from avgenergy.cli import main

sys.exit(main())
