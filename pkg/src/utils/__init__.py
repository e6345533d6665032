"""
Command-line tools for the geometry toolkit
"""
