from .application import main

if __name__ == "__main__":
    import sys

    sys.exit(main())
