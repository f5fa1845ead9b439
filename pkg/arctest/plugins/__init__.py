"""Command plugins contributing the arctest subcommands."""
