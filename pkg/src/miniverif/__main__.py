from .driver import main_entry

main_entry()
