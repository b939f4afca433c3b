__license__ = 'MIT License <http://www.opensource.org/licenses/mit-license.php>'
__docformat__ = 'epytext'

import random
from dataclasses import dataclass

from schedules.exceptions import CatalogTooSmall, InvalidScenario


@dataclass(frozen=True)
class ModelGroup:
    id: int
    networks: tuple


@dataclass(frozen=True)
class Scenario:
    """
    Model groups sharing the device. Every group is fed by its own periodic
    input source; the networks of a group receive each request together.
    """

    groups: tuple
    catalog_ref: str = ''
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, 'groups', tuple(self.groups))
        seen = set()
        for group in self.groups:
            if group.id in seen:
                raise InvalidScenario('group id %s is used twice' % group.id, 'duplicate-group')
            if not group.networks:
                raise InvalidScenario('group %s has no networks' % group.id, 'empty-group')
            seen.add(group.id)

    @property
    def networks(self):
        return tuple(name for group in self.groups for name in group.networks)

    def group_of(self, network):
        for group in self.groups:
            if network in group.networks:
                return group
        raise KeyError(network)


def contrast_scenario(catalog, models_per_group=3):
    """
    Two groups side by side: the lightest models of the catalog and the
    heaviest. Models are weighed by their fastest seed time, or by their
    MAC count when the catalog carries no seed times for every model.

    @type  catalog: L{Catalog}
    @rtype: L{Scenario}
    """

    names = list(catalog.names)
    if models_per_group < 1:
        raise CatalogTooSmall('a scenario needs at least one group of one model')
    if len(names) < 2 * models_per_group:
        raise CatalogTooSmall(
            'catalog %s has %d models, %d requested' % (catalog.name, len(names), 2 * models_per_group))

    if all(catalog.seed_costs.get(name) for name in names):
        weight = {name: min(catalog.seed_costs[name].values()) for name in names}
    else:
        weight = {name: sum(layer.mac_count for layer in catalog[name].layers) for name in names}
    ranked = sorted(names, key=lambda name: (weight[name], name))
    groups = (
        ModelGroup(id=0, networks=tuple(ranked[:models_per_group])),
        ModelGroup(id=1, networks=tuple(ranked[-models_per_group:])))
    return Scenario(groups=groups, catalog_ref=catalog.name)


def catalog_order(scenario, graphs):
    """
    The scenario's networks in the order the catalog lists them.

    @type  graphs: L{Catalog} or mapping of network names
    @rtype: tuple
    """

    names = graphs.names if hasattr(graphs, 'names') else list(graphs)
    position = {name: i for i, name in enumerate(names)}
    return tuple(sorted(scenario.networks, key=position.__getitem__))


def generate_scenario(catalog, n_groups, models_per_group, seed):
    """
    Draws disjoint model groups from a catalog.

    @type  n_groups: int
    @type  models_per_group: int
    @type  seed: int
    @param seed: the same seed always yields the same scenario

    @rtype: L{Scenario}
    """

    names = list(catalog.names)
    wanted = n_groups * models_per_group
    if n_groups < 1 or models_per_group < 1:
        raise CatalogTooSmall('a scenario needs at least one group of one model')
    if len(names) < wanted:
        raise CatalogTooSmall(
            'catalog %s has %d models, %d requested' % (catalog.name, len(names), wanted))

    picked = random.Random(seed).sample(names, wanted)
    groups = tuple(
        ModelGroup(id=i, networks=tuple(picked[i * models_per_group:(i + 1) * models_per_group]))
        for i in range(n_groups))
    return Scenario(groups=groups, catalog_ref=catalog.name, seed=seed)
