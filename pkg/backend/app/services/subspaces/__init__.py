"""Constructions of T = F and of the completely entangled subspace S"""
