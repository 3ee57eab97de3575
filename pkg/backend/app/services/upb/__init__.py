"""Unextendible product bases and the bound-entangled states they give"""
