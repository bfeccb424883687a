"""
Tests for the congruence toolkit
"""
