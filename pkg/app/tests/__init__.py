"""
Test suite for fsscoex
"""
