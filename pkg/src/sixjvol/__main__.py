from sixjvol.cli import main

main()
