from sptchain.cli import main_exit

main_exit()
