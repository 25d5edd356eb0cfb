class TransportError(Exception):
    """Base error of the message-passing layer."""


class InvalidPeerError(TransportError, ValueError):
    """Rank id out of range, or a forbidden self-addressed operation."""


class TransportTimeoutError(TransportError):
    """No message arrived within the world timeout."""


class CollectiveMisuseError(TransportTimeoutError):
    """Ranks called a collective inconsistently (subset of ranks, mismatched root)."""


class WorldShutdownError(TransportError):
    """The world is shutting down because another rank failed."""


class RankFailure:
    """Failure report of a single rank."""

    def __init__(self, rank: int, error_type: str, message: str, traceback: str = ""):
        self.rank = rank
        self.error_type = error_type
        self.message = message
        self.traceback = traceback

    @property
    def is_shutdown(self) -> bool:
        return self.error_type == WorldShutdownError.__name__

    def __repr__(self) -> str:
        return f"RankFailure(rank={self.rank}, {self.error_type}: {self.message})"


class WorldError(TransportError):
    """A world run failed; names the ranks that caused it."""

    def __init__(self, failures: list[RankFailure]):
        primary = [f for f in failures if not f.is_shutdown] or failures
        self.failures = failures
        self.failed_ranks = sorted(f.rank for f in primary)

        details = "; ".join(
            f"rank {f.rank}: {f.error_type}: {f.message}" for f in primary
        )
        super().__init__(f"World aborted, failing rank(s) {self.failed_ranks}: {details}")
