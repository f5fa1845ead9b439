"""Configuration, errors, logging, reports and file formats shared by every command."""
