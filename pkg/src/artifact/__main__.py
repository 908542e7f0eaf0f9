from artifact.cli import main

main()
