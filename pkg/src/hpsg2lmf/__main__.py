import sys

from hpsg2lmf.cli import main

sys.exit(main())
