"""
Simple launcher script for the Birkhoff slicing command-line tool
"""
import os
import sys


def main():
    """Run the command-line front end with the arguments given to this script"""

    # Get the current directory
    current_dir = os.path.dirname(os.path.abspath(__file__))
    cli_path = os.path.join(current_dir, "frontend", "cli.py")

    # Check if the front end exists
    if not os.path.exists(cli_path):
        print(f"❌ Error: command-line front end not found at {cli_path}", file=sys.stderr)
        return 2

    sys.path.insert(0, current_dir)
    from frontend.cli import main as cli_main

    try:
        return cli_main(sys.argv[1:])
    except KeyboardInterrupt:
        print("\n👋 Stopped by user", file=sys.stderr)
        return 130


if __name__ == "__main__":
    sys.exit(main())
