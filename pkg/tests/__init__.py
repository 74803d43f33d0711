"""
Empty test file.
"""

