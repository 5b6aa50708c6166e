"""Pseudorandom generator against context-free languages with advice, with exhaustive finite checks."""
from .core import BitString, inner_product_parity, midd, pref, suf, track
from .generator import gen_parse, generate, invert, range_stats, verify_range_equals_ip
from .iplang import IP, gap_stat, ip_dense, ip_member, ip_parse

__all__ = [
    "BitString", "inner_product_parity", "pref", "suf", "midd", "track",
    "gen_parse", "generate", "invert", "range_stats", "verify_range_equals_ip",
    "IP", "ip_parse", "ip_member", "ip_dense", "gap_stat",
]
