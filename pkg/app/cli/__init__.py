from app.cli.commands import cmd_classify, cmd_simulate, cmd_verify
from app.cli.runner import main


__all__ = ["cmd_classify", "cmd_simulate", "cmd_verify", "main"]
