import sys

from weylbrauer.cli.main import main

sys.exit(main())
