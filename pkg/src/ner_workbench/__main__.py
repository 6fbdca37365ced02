import sys

from ner_workbench.cli import main

if __name__ == "__main__":
    sys.exit(main())
