"""Print the saturated / very saturated / oasitic tables for n = 1..12."""
from coverhecke.cli import run

if __name__ == "__main__":
    run(["tables", "--format", "md", "--n-max", "12"])
