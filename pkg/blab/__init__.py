"""Numerical lab for infinite doubly stochastic matrices."""

from dotenv import load_dotenv

# Load environment variables for the entire package
load_dotenv('.env')
load_dotenv('.env.local')
