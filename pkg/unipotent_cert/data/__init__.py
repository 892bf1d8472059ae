"""Reading and writing presentations, group tables and certificates."""
