# src/coordination/__init__.py
