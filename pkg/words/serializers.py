"""JSON codec for words: ``[["v1", 3], ["v2", -1]]``."""
from rest_framework import serializers

from core.exceptions import InvalidWord
from graphs.models import DyerGraph
from graphs.serializers import error_text

from .models import NormalForm, Syllable, SyllabicWord


class SyllableField(serializers.Field):
    default_error_messages = {
        'invalid': 'Expected a [generator_id, exponent] pair.',
    }

    def to_internal_value(self, data):
        if not isinstance(data, (list, tuple)) or len(data) != 2:
            self.fail('invalid')
        gen, exp = data
        if isinstance(exp, bool) or not isinstance(exp, int):
            self.fail('invalid')
        return str(gen), exp

    def to_representation(self, value):
        return [value[0], value[1]]


class WordSerializer(serializers.Serializer):
    syllables = serializers.ListField(child=SyllableField(), allow_empty=True)


def load_word(g: DyerGraph, data) -> SyllabicWord:
    serializer = WordSerializer(data={'syllables': data})
    if not serializer.is_valid():
        raise InvalidWord(error_text(serializer.errors))
    syllables = []
    for gen, exp in serializer.validated_data['syllables']:
        if gen not in g.vertices:
            raise InvalidWord(f"unknown generator {gen!r}")
        if exp:
            syllables.append(Syllable(g.index(gen), exp))
    return SyllabicWord(tuple(syllables))


def dump_word(g: DyerGraph, word: SyllabicWord) -> list:
    return [[g.vertices[s.gen], s.exp] for s in word.syllables]


def dump_normal_form(g: DyerGraph, nf: NormalForm) -> dict:
    return {
        'word': dump_word(g, nf.word),
        'syllabic_length': nf.syllabic_length,
        'word_length': nf.word_length,
    }
