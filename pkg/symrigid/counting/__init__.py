"""!
@file counting/__init__.py
@brief Sparsity counts and greedy matroid search.
"""
