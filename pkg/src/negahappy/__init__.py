"""Happy numbers in negative bases."""
