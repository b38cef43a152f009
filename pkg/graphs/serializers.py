"""JSON codecs for Dyer graphs and Dyer matrices.

Graph format::

    {"vertices": [{"id": "v1", "order": "inf"}], "edges": [{"u": "v1", "v": "v2", "m": 3}]}

Weights are integers >= 2 or the string "inf". An edge must carry ``m``;
non-edges (commuting pairs) are simply absent.
"""
from rest_framework import serializers

from core.exceptions import InvalidDyerGraph, InvalidDyerMatrix, InvalidWeight

from .conversions import ensure_valid
from .models import DyerGraph, DyerMatrix, ExtNat


class ExtNatField(serializers.Field):
    default_error_messages = {
        'invalid': 'Expected an integer >= 2 or "inf".',
    }

    def to_internal_value(self, data):
        try:
            return ExtNat.parse(data)
        except InvalidWeight as exc:
            raise serializers.ValidationError(str(exc))

    def to_representation(self, value):
        return ExtNat.parse(value).to_json()


class VertexSerializer(serializers.Serializer):
    id = serializers.CharField()
    order = ExtNatField()


class EdgeSerializer(serializers.Serializer):
    u = serializers.CharField()
    v = serializers.CharField()
    m = ExtNatField()


class DyerGraphSerializer(serializers.Serializer):
    vertices = VertexSerializer(many=True)
    edges = EdgeSerializer(many=True, required=False, default=list)

    def validate(self, attrs):
        ids = {v['id'] for v in attrs['vertices']}
        unknown = sorted({x for e in attrs['edges'] for x in (e['u'], e['v'])} - ids)
        if unknown:
            raise serializers.ValidationError(f"edges refer to unknown vertices {unknown}")
        return attrs

    def create(self, validated_data):
        return DyerGraph.build(
            [(v['id'], v['order']) for v in validated_data['vertices']],
            [(e['u'], e['v'], e['m']) for e in validated_data['edges']],
        )

    def to_representation(self, graph):
        return {
            'vertices': [{'id': v, 'order': f.to_json()} for v, f in zip(graph.vertices, graph.orders)],
            'edges': [{'u': e.u, 'v': e.v, 'm': e.m.to_json()} for e in graph.edges],
        }


class DyerMatrixSerializer(serializers.Serializer):
    entries = serializers.ListField(child=serializers.ListField(child=ExtNatField()))

    def create(self, validated_data):
        return DyerMatrix(tuple(tuple(row) for row in validated_data['entries']))

    def to_representation(self, matrix):
        return {'entries': matrix.to_json()}


def _flatten(errors, prefix=''):
    if isinstance(errors, dict):
        for key, value in errors.items():
            yield from _flatten(value, f'{prefix}{key}.' if key != 'non_field_errors' else prefix)
    elif isinstance(errors, list):
        for i, value in enumerate(errors):
            if isinstance(value, (dict, list)):
                yield from _flatten(value, f'{prefix}{i}.')
            else:
                yield f'{prefix.rstrip(".")}: {value}' if prefix else str(value)
    else:
        yield f'{prefix.rstrip(".")}: {errors}' if prefix else str(errors)


def error_text(errors) -> str:
    return '; '.join(_flatten(errors))


def load_graph(data, strict: bool = True) -> DyerGraph:
    """Decode graph JSON; with ``strict`` the Dyer invariants are enforced too."""
    serializer = DyerGraphSerializer(data=data)
    if not serializer.is_valid():
        raise InvalidDyerGraph(error_text(serializer.errors))
    graph = serializer.save()
    return ensure_valid(graph) if strict else graph


def dump_graph(graph: DyerGraph) -> dict:
    return DyerGraphSerializer(graph).data


def load_matrix(data) -> DyerMatrix:
    if isinstance(data, list):
        data = {'entries': data}
    serializer = DyerMatrixSerializer(data=data)
    if not serializer.is_valid():
        raise InvalidDyerMatrix(error_text(serializer.errors))
    return serializer.save()


def dump_matrix(matrix: DyerMatrix) -> dict:
    return DyerMatrixSerializer(matrix).data
