import sys

from qnet_pumping.experiments.cli import main

if __name__ == '__main__':
    sys.exit(main())
