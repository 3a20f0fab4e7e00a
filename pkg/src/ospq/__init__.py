"""Exact computation in the extended quantum group of type B and its super counterpart."""
