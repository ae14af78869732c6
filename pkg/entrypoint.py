import sys

from projquant.cli import QuantizationTool


if __name__ == '__main__':
    sys.exit(QuantizationTool().run())
