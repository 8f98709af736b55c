"""Stand-alone scripts for the Birkhoff lab."""
