from palinwidth.cli import main
import sys

sys.exit(main())
