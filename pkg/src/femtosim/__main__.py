import sys

from femtosim.cli import main

sys.exit(main())
