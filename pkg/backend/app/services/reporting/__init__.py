"""Deterministic JSON and CSV reports"""
