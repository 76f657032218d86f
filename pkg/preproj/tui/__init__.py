"""Rich terminal output."""
