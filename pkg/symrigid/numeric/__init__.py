"""!
@file numeric/__init__.py
@brief Covering graphs, sampled frameworks and rigidity ranks.
"""
