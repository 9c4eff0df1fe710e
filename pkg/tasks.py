from invoke import task

@task
def clean(c):
    c.run("rm -rf htmlcov .coverage .pytest_cache asaiflach/__pycache__ test/__pycache__")

@task(clean)
def test(c):
    c.run("coverage run --branch --source=asaiflach -m pytest test")
    c.run("coverage report --fail-under=76")

@task(clean)
def cover(c):
    c.run("coverage run --branch --source=asaiflach -m pytest test")
    c.run("coverage html")

@task
def verify(c, seed=0):
    """
    runs every verification suite on the configured primes, exits non-zero on a failing check
    """
    c.run("python asaiflach_cli.py verify --all --seed %d" % seed)
