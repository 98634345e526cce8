__all__ = ["commands", "dot", "expr", "graph_format", "pathspec", "reports"]
