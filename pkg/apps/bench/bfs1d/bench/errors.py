class BenchError(Exception):
    """Base error of the benchmark harness; `exit_code` is the CLI exit status."""

    exit_code = 1


class BenchUsageError(BenchError):
    """Invalid plan or command-line arguments."""

    exit_code = 1


class BenchIOError(BenchError):
    """Graph or result file cannot be read or written."""

    exit_code = 2


class BenchCorrectnessError(BenchError):
    """A distributed run disagreed with the serial oracle; aborts the plan."""

    exit_code = 3
