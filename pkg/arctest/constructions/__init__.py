"""The diagonal digraphs Γ(T) and the Γ_n family."""
