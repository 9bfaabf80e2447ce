"""Generic helpers with no knowledge of code analysis."""
