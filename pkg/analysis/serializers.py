"""Family JSON: ``{"base": <graph>, "growing": [{"slot": "edge:v2-v3"}], "limit": <graph>}``."""
import re

from rest_framework import serializers

from core.exceptions import FamilyError
from graphs.serializers import DyerGraphSerializer, error_text

from .models import Family

SLOT = re.compile(r'^(?:vertex:(?P<vertex>[^\s]+)|edge:(?P<u>[^\s-]+)-(?P<v>[^\s]+))$')


class SlotSerializer(serializers.Serializer):
    slot = serializers.CharField()

    def validate_slot(self, value):
        match = SLOT.match(value)
        if not match:
            raise serializers.ValidationError('expected "vertex:<id>" or "edge:<u>-<v>"')
        if match.group('vertex'):
            return ('vertex', match.group('vertex'))
        return ('edge', (match.group('u'), match.group('v')))


class FamilySerializer(serializers.Serializer):
    base = DyerGraphSerializer()
    growing = SlotSerializer(many=True, allow_empty=False)
    limit = DyerGraphSerializer()

    def create(self, validated_data):
        graphs = DyerGraphSerializer()
        return Family(
            base=graphs.create(validated_data['base']),
            growing=tuple(item['slot'] for item in validated_data['growing']),
            limit=graphs.create(validated_data['limit']),
        )


def load_family(data) -> Family:
    serializer = FamilySerializer(data=data)
    if not serializer.is_valid():
        raise FamilyError(error_text(serializer.errors))
    return serializer.save()


def parse_ks(text: str) -> list[int]:
    try:
        return [int(x) for x in re.split(r'[\s,]+', text.strip()) if x]
    except ValueError:
        raise FamilyError(f"cannot read parameter list {text!r}") from None
