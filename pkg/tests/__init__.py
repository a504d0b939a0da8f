"""
Test suite for Loewner-BT.
"""
