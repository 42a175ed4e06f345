# Makes this directory importable (for the shared `strategies` module).
