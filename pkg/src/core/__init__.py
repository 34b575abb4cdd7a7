"""Barcode algorithms: linear algebra, complexes, distances, models and entropy."""
