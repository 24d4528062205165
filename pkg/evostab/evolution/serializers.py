"""
SPDX-License-Identifier: BSD-3-Clause

Define serializers for the game file and the analysis report.

Rationals always travel as ``"a/b"`` strings. Each serializer's create()
rebuilds the immutable domain object, so a report read back from JSON
compares equal to the one written.
"""
from logging import getLogger

from django.core.exceptions import ValidationError as DjangoValidationError
from rest_framework import serializers

from shared.util import format_rational, parse_rational
from .barriers import BarrierResult
from .models import AnalysisDocument, MixedStrategy, SymmetricGame
from .oracle import Certification, Counterexample, GridSpec
from .stability import StabilityReport, Witness

logger = getLogger('evolution')


class RationalField(serializers.Field):
    """Exact rational carried as a string such as ``"-3/4"``."""

    default_error_messages = {
        'invalid': 'unparseable rational {value!r}',
    }

    def to_internal_value(self, data):
        """Parse the string; floats are refused."""
        try:
            return parse_rational(data)
        except ValueError:
            self.fail('invalid', value=data)

    def to_representation(self, value):
        """Render the Fraction as a string."""
        return format_rational(value)


class StrategyField(serializers.ListField):
    """Mixed strategy carried as a list of rational strings."""

    child = RationalField()

    def to_internal_value(self, data):
        """Build a MixedStrategy, reporting simplex violations."""
        weights = super().to_internal_value(data)
        try:
            return MixedStrategy(tuple(weights))
        except DjangoValidationError as exc:
            raise serializers.ValidationError(exc.messages)


class GameSerializer(serializers.Serializer):
    """Serialize a symmetric game file."""

    k = serializers.IntegerField(min_value=1)
    payoffs = serializers.ListField(
        child=serializers.ListField(child=RationalField(), allow_empty=False),
        allow_empty=False)
    labels = serializers.ListField(child=serializers.CharField(),
                                   required=False, allow_null=True)

    def validate(self, data):
        """Check the payoff matrix is k x k and the labels fit."""
        k = data['k']
        rows = data['payoffs']
        if len(rows) != k:
            raise serializers.ValidationError({
                'payoffs': f'matrix must be square: expected {k} rows, '
                           f'got {len(rows)}'})
        for i, row in enumerate(rows):
            if len(row) != k:
                raise serializers.ValidationError({
                    'payoffs': f'matrix must be square: row {i} has '
                               f'{len(row)} entries, expected {k}'})
        labels = data.get('labels')
        if labels is not None and len(labels) != k:
            raise serializers.ValidationError({
                'labels': f'expected {k} labels, got {len(labels)}'})
        return data

    def create(self, validated_data):
        """Return the SymmetricGame."""
        return SymmetricGame(
            tuple(tuple(row) for row in validated_data['payoffs']),
            validated_data.get('labels'))

    def to_representation(self, instance):
        """Write the game, leaving out labels it does not have."""
        data = {
            'k': instance.k,
            'payoffs': [[format_rational(x) for x in row]
                        for row in instance.payoffs],
        }
        if instance.labels:
            data['labels'] = list(instance.labels)
        return data


class WitnessSerializer(serializers.Serializer):
    """Serialize the explanation of a false flag."""

    flag = serializers.CharField()
    kind = serializers.CharField()
    index = serializers.IntegerField(allow_null=True, required=False)
    other = serializers.IntegerField(allow_null=True, required=False)
    strategy = StrategyField(allow_null=True, required=False)
    opponent = StrategyField(allow_null=True, required=False)
    value = RationalField(allow_null=True, required=False)

    def create(self, validated_data):
        """Return the Witness."""
        return Witness(**validated_data)


class FlagsSerializer(serializers.Serializer):
    """Serialize the six stability flags of a report."""

    nash = serializers.BooleanField()
    strict_nash = serializers.BooleanField()
    ess = serializers.BooleanField()
    mess = serializers.BooleanField()
    locally_dominant = serializers.BooleanField()
    strictly_locally_dominant = serializers.BooleanField()


class StabilityReportSerializer(serializers.Serializer):
    """Serialize one analysed strategy."""

    strategy = StrategyField()
    flags = FlagsSerializer(source='*')
    witness = WitnessSerializer(allow_null=True, required=False)

    def create(self, validated_data):
        """Return the StabilityReport."""
        witness = validated_data.pop('witness', None)
        if witness is not None:
            witness = WitnessSerializer().create(witness)
        return StabilityReport(witness=witness, **validated_data)


class BarrierResultSerializer(serializers.Serializer):
    """Serialize a box or uniform barrier, or the proportions refuting one."""

    kind = serializers.ChoiceField(
        choices=[BarrierResult.BARRIER, BarrierResult.NONE])
    incumbent = StrategyField(allow_null=True, required=False)
    mutants = serializers.ListField(child=StrategyField(), allow_null=True,
                                    required=False)
    m = serializers.IntegerField(allow_null=True, required=False)
    epsilon = RationalField(allow_null=True, required=False)
    open = serializers.BooleanField(required=False)
    cap_applied = serializers.BooleanField(required=False)
    total = RationalField(allow_null=True, required=False)
    proportions = serializers.ListField(child=RationalField(),
                                        allow_null=True, required=False)
    violated_index = serializers.IntegerField(allow_null=True, required=False)
    h_value = RationalField(allow_null=True, required=False)

    def create(self, validated_data):
        """Return the BarrierResult."""
        for name in ('mutants', 'proportions'):
            if validated_data.get(name) is not None:
                validated_data[name] = tuple(validated_data[name])
        return BarrierResult(**validated_data)


class GridSpecSerializer(serializers.Serializer):
    """Serialize one oracle resolution."""

    denom = serializers.IntegerField(min_value=1)
    eps_list = serializers.ListField(child=RationalField(), allow_empty=False)
    m = serializers.IntegerField(min_value=1)

    def create(self, validated_data):
        """Return the GridSpec."""
        return GridSpec(validated_data['denom'],
                        tuple(validated_data['eps_list']),
                        validated_data['m'])


class CounterexampleSerializer(serializers.Serializer):
    """Serialize mutants and proportions that break robustness."""

    mutants = serializers.ListField(child=StrategyField())
    proportions = serializers.ListField(child=RationalField())
    violated_index = serializers.IntegerField(min_value=0)
    h_value = RationalField()

    def create(self, validated_data):
        """Return the Counterexample."""
        return Counterexample(tuple(validated_data['mutants']),
                              tuple(validated_data['proportions']),
                              validated_data['violated_index'],
                              validated_data['h_value'])


class CertificationSerializer(serializers.Serializer):
    """Serialize the summary of the oracle searches for one strategy."""

    strategy = StrategyField()
    verdict = serializers.ReadOnlyField()
    resolutions = GridSpecSerializer(many=True)
    counterexample = CounterexampleSerializer(allow_null=True, required=False)
    radius = RationalField(allow_null=True, required=False)
    local_violation = serializers.ListField(child=StrategyField(),
                                            allow_null=True, required=False,
                                            min_length=2, max_length=2)

    def create(self, validated_data):
        """Return the Certification."""
        resolutions = tuple(GridSpecSerializer().create(item)
                            for item in validated_data['resolutions'])
        counterexample = validated_data.get('counterexample')
        if counterexample is not None:
            counterexample = CounterexampleSerializer().create(counterexample)
        violation = validated_data.get('local_violation')
        if violation is not None:
            violation = tuple(violation)
        return Certification(validated_data['strategy'], resolutions,
                             counterexample, validated_data.get('radius'),
                             violation)


class GameInfoSerializer(serializers.Serializer):
    """Serialize the game metadata of a report."""

    k = serializers.IntegerField(min_value=1)
    labels = serializers.ListField(child=serializers.CharField(),
                                   allow_null=True, required=False)
    source = serializers.CharField(allow_null=True, required=False)


class AnalysisDocumentSerializer(serializers.Serializer):
    """Serialize the report written by the analysis commands."""

    game = GameInfoSerializer(source='*')
    results = StabilityReportSerializer(many=True, required=False)
    barriers = BarrierResultSerializer(many=True, required=False)
    certifications = CertificationSerializer(many=True, required=False)
    version = serializers.CharField()

    def create(self, validated_data):
        """Return the AnalysisDocument."""
        labels = validated_data.get('labels')
        return AnalysisDocument(
            k=validated_data['k'],
            labels=tuple(labels) if labels is not None else None,
            source=validated_data.get('source'),
            results=tuple(StabilityReportSerializer().create(item)
                          for item in validated_data.get('results', ())),
            barriers=tuple(BarrierResultSerializer().create(item)
                           for item in validated_data.get('barriers', ())),
            certifications=tuple(
                CertificationSerializer().create(item)
                for item in validated_data.get('certifications', ())),
            version=validated_data['version'])
