"""Run the swarm-bmc command line: python -m swarmbmc <subcommand> ..."""

import sys

from . import cli

if __name__ == "__main__":
    sys.exit(cli(sys.argv[1:]))
