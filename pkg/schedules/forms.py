__license__ = 'MIT License <http://www.opensource.org/licenses/mit-license.php>'
__docformat__ = 'epytext'

import json
import os

from django import forms
from django.utils.translation import gettext_lazy as _

from schedules.exceptions import InvalidScenario
from schedules.graphs import validate_network
from schedules.helpers import catalog_from_dict, load_archive, profile_from_dict, scenario_from_dict
from schedules.metrics import AlphaGrid


class JSONFileForm(forms.Form):
    """
    Loads a JSON input file; subclasses turn its contents into domain
    objects in C{parse} and report problems through C{error_messages}.
    """

    path = forms.CharField()

    error_messages = {
        'missing': 'File %s does not exist.',
        'not_json': 'File %s is not valid JSON: %s',
        'malformed': 'File %s lacks required fields: %s',
    }

    def clean_path(self):
        path = self.cleaned_data['path']
        if not os.path.isfile(path):
            raise forms.ValidationError(_(self.error_messages['missing']) % path, code='missing')
        try:
            with open(path) as handle:
                self.cleaned_data['content'] = json.load(handle)
        except ValueError as error:
            raise forms.ValidationError(_(self.error_messages['not_json']) % (path, error), code='not_json')
        return path

    def clean(self):
        cleaned = super(JSONFileForm, self).clean()
        if 'content' not in cleaned:
            return cleaned
        try:
            cleaned['object'] = self.parse(cleaned['content'])
        except (KeyError, TypeError, ValueError) as error:
            raise forms.ValidationError(
                _(self.error_messages['malformed']) % (cleaned['path'], error), code='malformed')
        self.check(cleaned['object'])
        return cleaned

    def parse(self, content):
        return content

    def check(self, value):
        pass


class CatalogFileForm(JSONFileForm):
    error_messages = dict(JSONFileForm.error_messages, invalid_network='Network %s: %s')

    def parse(self, content):
        return catalog_from_dict(content)

    def check(self, catalog):
        errors = []
        for graph in catalog:
            for violation in validate_network(graph):
                errors.append(forms.ValidationError(
                    _(self.error_messages['invalid_network']) % (graph.name, violation.message),
                    code=violation.code))
        if errors:
            raise forms.ValidationError(errors)


class ProfileFileForm(JSONFileForm):
    def parse(self, content):
        return profile_from_dict(content)


class ScenarioFileForm(JSONFileForm):
    error_messages = dict(
        JSONFileForm.error_messages,
        duplicate_network='Network %s appears in two groups.',
        invalid_group='File %s: %s.')

    def parse(self, content):
        try:
            return scenario_from_dict(content)
        except InvalidScenario as error:
            raise forms.ValidationError(
                _(self.error_messages['invalid_group']) % (self.cleaned_data['path'], error), code=error.code)

    def check(self, scenario):
        seen = set()
        for name in scenario.networks:
            if name in seen:
                raise forms.ValidationError(
                    _(self.error_messages['duplicate_network']) % name, code='duplicate_network')
            seen.add(name)


class ArchiveForm(forms.Form):
    """
    A solution file, or an archive directory of them.
    """

    path = forms.CharField()

    error_messages = {
        'missing': 'No solution file or archive at %s.',
        'empty': 'Archive %s holds no solution files.',
        'not_json': 'Solution file in %s is not valid JSON: %s',
    }

    def clean_path(self):
        path = self.cleaned_data['path']
        if not os.path.exists(path):
            raise forms.ValidationError(_(self.error_messages['missing']) % path, code='missing')
        try:
            self.cleaned_data['solutions'] = load_archive(path)
        except ValueError as error:
            raise forms.ValidationError(_(self.error_messages['not_json']) % (path, error), code='not_json')
        if not self.cleaned_data['solutions']:
            raise forms.ValidationError(_(self.error_messages['empty']) % path, code='empty')
        return path


class ScenarioOptionsForm(forms.Form):
    groups = forms.IntegerField(min_value=1)
    models = forms.IntegerField(min_value=1)
    seed = forms.IntegerField(min_value=0)


class SearchOptionsForm(forms.Form):
    alpha = forms.FloatField(min_value=1e-6)
    population = forms.IntegerField(min_value=2)
    generations = forms.IntegerField(min_value=0)
    seed = forms.IntegerField(min_value=0)
    horizon = forms.IntegerField(min_value=1)

    error_messages = {
        'odd_population': 'The population size must be even.',
    }

    def clean_population(self):
        population = self.cleaned_data['population']
        if population % 2:
            raise forms.ValidationError(_(self.error_messages['odd_population']), code='odd_population')
        return population


class SweepOptionsForm(forms.Form):
    grid = forms.CharField()
    horizon = forms.IntegerField(min_value=1)
    jobs = forms.IntegerField(min_value=1)
    seed = forms.IntegerField(min_value=0, required=False)

    error_messages = {
        'malformed_grid': 'Grid %s is not start:stop:step with 0 < start < stop and step > 0.',
        'label': 'Solutions must be given as label=path, not %s.',
    }

    def clean_grid(self):
        text = self.cleaned_data['grid']
        try:
            return AlphaGrid.parse(text)
        except ValueError:
            raise forms.ValidationError(_(self.error_messages['malformed_grid']) % text, code='malformed_grid')


def labelled(values, error_messages=SweepOptionsForm.error_messages):
    """
    Splits C{label=path} arguments; bare paths are labelled by their file
    or directory name.
    """

    pairs = []
    for value in values:
        if '=' in value:
            label, path = value.split('=', 1)
            if not label or not path:
                raise forms.ValidationError(_(error_messages['label']) % value, code='label')
        else:
            path = value
            label = os.path.splitext(os.path.basename(os.path.normpath(value)))[0]
        pairs.append((label, path))
    return pairs
