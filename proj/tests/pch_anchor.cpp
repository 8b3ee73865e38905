// Translation unit that owns the shared test precompiled header.
