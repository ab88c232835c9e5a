from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from tqdm import tqdm

from config.config import config

from .logger import logger


def map_in_workers(func, items: list, jobs: int = 1, desc: str = '') -> list:
    """
    Apply func to every item, optionally across worker processes.

    Results come back in input order whatever the worker count, so callers can merge
    them by position and get identical output for any jobs value.

    Args:
        func: Picklable callable of one argument
        items: Work items
        jobs: Number of worker processes; 1 or less runs in-process
        desc: Progress bar label

    Returns:
        list: func(item) for each item, in order
    """
    items = list(items)
    disable = not config.show_progress or not items
    if jobs <= 1 or len(items) < 2:
        return [func(item) for item in tqdm(items, desc=desc, disable=disable)]

    chunksize = max(1, len(items) // (jobs * 8))
    with ProcessPoolExecutor(max_workers=jobs) as executor:
        return list(
            tqdm(
                executor.map(func, items, chunksize=chunksize),
                total=len(items),
                desc=desc,
                disable=disable,
            )
        )


@dataclass(frozen=True)
class Violation:
    kind: str
    detail: str

    def __str__(self) -> str:
        return f'{self.kind}: {self.detail}'


@dataclass
class Report:
    """Violations collected by a verification pass; empty means the check passed."""

    subject: str
    violations: list[Violation] = field(default_factory=list)

    def add(self, kind: str, detail: str) -> None:
        self.violations.append(Violation(kind, detail))

    def extend(self, other: 'Report') -> None:
        self.violations.extend(other.violations)

    @property
    def passed(self) -> bool:
        return not self.violations

    def kinds(self) -> set[str]:
        return {v.kind for v in self.violations}

    def log(self) -> None:
        if self.passed:
            logger.info(f'{self.subject}: verification passed')
            return
        for violation in self.violations:
            logger.warning(f'{self.subject}: {violation}')
