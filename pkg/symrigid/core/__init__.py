"""!
@file core/__init__.py
@brief Cyclic groups, gain graphs, their text format, the gallery and subgraph classification.
"""
