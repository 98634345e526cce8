from __future__ import annotations

import sys

from lpa_chen.textio.commands import run_command


def main() -> None:
    sys.exit(run_command(sys.argv[1:]))


if __name__ == "__main__":
    main()
