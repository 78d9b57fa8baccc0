# Repository root on sys.path for the top-level packages (model, states, ...).
