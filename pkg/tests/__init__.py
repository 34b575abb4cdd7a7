"""Tests for reeb-barcode-entropy."""
