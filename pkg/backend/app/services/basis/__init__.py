"""Orthonormal bases of the completely entangled subspace"""
