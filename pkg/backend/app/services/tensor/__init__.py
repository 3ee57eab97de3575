"""Multi-index algebra, partial transposes and the Hermitian eigensolver"""
