"""Lower bounds on route durations used to screen local-search moves."""

from .fixed_route import Route, RouteEvaluator


def prop2_bound(i, j, instance):
    """
    Lower bound on the length of any detour path along arc (i, j).

    Any path i -> station -> j is at least d_ij long and at least as long as
    the distances from i and from j to their nearest stations.

    Returns:
        float: max(d_ij, nearest(i) + nearest(j))
    """
    nearest = instance.nearest_station_distance()
    return float(max(instance.distance[i, j], nearest[i] + nearest[j]))


def lower_bound_route(route, instance, scenarios):
    """
    Expected-duration lower bound of a route.

    Arcs that keep the SoC above Q^T cost their travel time. Triggered arcs
    cost the shortest detour length at the vehicle speed plus the charge
    from Q^T to Q^G (and the energy to the next node from its nearest
    station) at the fastest charging rate of the instance.

    Args:
        route (Route or sequence): customer sequence
        instance (Instance): the network
        scenarios (ScenarioSet): energy scenarios

    Returns:
        float: time units
    """
    customers = route.customers if isinstance(route, Route) else tuple(route)
    return RouteEvaluator(instance, scenarios).lower_bound(customers)
