"""Surface syntax for words: ``s1^3 s2^-1`` or ``v1 v2^2``.

A token names a vertex id of the graph; ``s<i>`` falls back to the i-th
generator of the marking (1-based) when no vertex carries that id. ``1`` or
an empty string is the identity.
"""
import re

from core.exceptions import InvalidWord
from graphs.models import DyerGraph

from .models import Syllable, SyllabicWord

TOKEN = re.compile(r'^(?P<gen>[^\s^*]+?)(?:\^(?P<exp>[+-]?\d+))?$')
POSITIONAL = re.compile(r'^s(?P<index>\d+)$')


def _generator(g: DyerGraph, name: str) -> int:
    if name in g.vertices:
        return g.index(name)
    match = POSITIONAL.match(name)
    if match:
        index = int(match.group('index'))
        if 1 <= index <= g.rank:
            return index - 1
        raise InvalidWord(f"generator {name!r} out of range for rank {g.rank}")
    raise InvalidWord(f"unknown generator {name!r}")


def parse_word(g: DyerGraph, text: str) -> SyllabicWord:
    syllables = []
    for token in re.split(r'[\s,*]+', text.strip()):
        if token in ('', '1'):
            continue
        match = TOKEN.match(token)
        if not match:
            raise InvalidWord(f"cannot read {token!r}")
        exp = int(match.group('exp') or 1)
        if exp:
            syllables.append(Syllable(_generator(g, match.group('gen')), exp))
    return SyllabicWord(tuple(syllables))


def format_word(g: DyerGraph, word: SyllabicWord) -> str:
    if not word.syllables:
        return '1'
    return ' '.join(
        g.vertices[s.gen] if s.exp == 1 else f'{g.vertices[s.gen]}^{s.exp}'
        for s in word.syllables
    )
