from math import gcd


def smallest_divisor(n: int) -> int:
    """Smallest divisor > 1 of ``n`` by trial division (n itself if prime)."""
    if n % 2 == 0:
        return 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return d
        d += 2
    return n


def is_prime(n: int) -> bool:
    return n >= 2 and smallest_divisor(n) == n


def factorize(n: int) -> dict:
    factors = {}
    while n > 1:
        d = smallest_divisor(n)
        factors[d] = factors.get(d, 0) + 1
        n //= d
    return factors


def totient(n: int) -> int:
    result = n
    for q in factorize(n):
        result = result // q * (q - 1)
    return result


def primes_upto(n: int) -> list:
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, int(n**0.5) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(sieve[i * i :: i]))
    return [i for i, flag in enumerate(sieve) if flag]


def content(values) -> int:
    g = 0
    for v in values:
        g = gcd(g, v)
        if g == 1:
            break
    return g
