import logging
import math
import sys
from multiprocessing import Pool
from typing import Iterable, Optional, Tuple

from tqdm import tqdm

import src.config as config


def setup_logger(name: str, level=None):
    """
    Configures a logger with standard formatting.
    Output goes to stderr so JSON / CSV on stdout stays machine readable.
    """
    formatter = logging.Formatter(
        "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
    )

    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(formatter)

    logger = logging.getLogger(name)
    logger.setLevel(level or config.LOG_LEVEL)

    # Avoid duplicate handlers when modules are re-imported by workers
    if not logger.handlers:
        logger.addHandler(handler)

    return logger


def set_global_level(level) -> None:
    """Applies a level to every logger created through setup_logger."""
    for name in list(logging.Logger.manager.loggerDict):
        logger = logging.getLogger(name)
        if logger.handlers:
            logger.setLevel(level)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    for d in range(3, math.isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


def prime_power(q: int) -> Optional[Tuple[int, int]]:
    """
    Recognizes prime powers.
    Returns:
        (p, r) with q = p^r, or None when q is not a prime power.
    """
    if q < 2:
        return None
    for p in range(2, math.isqrt(q) + 1):
        if q % p == 0:
            if not is_prime(p):
                return None
            r = 0
            while q % p == 0:
                q //= p
                r += 1
            return (p, r) if q == 1 else None
    return (q, 1)


def divisors(n: int) -> list:
    small, large = [], []
    for d in range(1, math.isqrt(n) + 1):
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
    return small + large[::-1]


def parse_int_list(text: str) -> list:
    """'4,8, 16' -> [4, 8, 16]"""
    return [int(part) for part in text.split(",") if part.strip()]


def apply_pool(func, arguments: Iterable, workers: int = 1, initializer=None,
               initargs: tuple = (), desc: Optional[str] = None, verbose: bool = False):
    """
    Applies func to every item, in a process pool when workers > 1.

    The initializer runs once per worker (or once inline) so large read-only
    state such as a group table is shipped a single time.

    Returns:
        list of results in input order.
    """
    arguments = list(arguments)
    if workers <= 1 or len(arguments) <= 1:
        if initializer is not None:
            initializer(*initargs)
        return [func(arg) for arg in tqdm(arguments, desc=desc, disable=not verbose)]
    with Pool(processes=workers, initializer=initializer, initargs=initargs) as pool:
        results = pool.imap(func, arguments)
        return list(tqdm(results, total=len(arguments), desc=desc, disable=not verbose))
