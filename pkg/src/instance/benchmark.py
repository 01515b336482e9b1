"""
Benchmark Instance Importer
===========================

Reads the vrp-rep XML files of the EVRP-NL benchmark (tcAcBsCcDE.xml).
The grammar this importer accepts is documented in docs/BENCHMARKS.md:

    <instance>
      <network>
        <nodes>
          <node id="0" type="0"><cx>..</cx><cy>..</cy></node>          depot
          <node id="1" type="1"><cx>..</cx><cy>..</cy></node>          customer
          <node id="11" type="2"><cx>..</cx><cy>..</cy>
            <custom><cs_type>fast</cs_type></custom></node>           station
        </nodes>
      </network>
      <fleet><vehicle_profile>
        <speed_factor>..</speed_factor>
        <custom>
          <consumption_rate>..</consumption_rate>
          <battery_capacity>..</battery_capacity>
          <charging_functions>
            <function cs_type="fast">
              <breakpoint><battery_level>..</battery_level>
                          <charging_time>..</charging_time></breakpoint>
            </function>
          </charging_functions>
        </custom>
      </vehicle_profile></fleet>
      <requests><request node="1"><service_time>..</service_time></request></requests>
    </instance>

Breakpoints are rescaled from the file's battery capacity to Q^max on both
axes, which keeps each technology's charging power unchanged.
"""

import logging
import xml.etree.ElementTree as ET

from ..charging import ChargingFunction
from ..exceptions import InstanceError
from .io import build_instance, coerce_params
from .network import Node, NodeKind, PolicyParams

logger = logging.getLogger(__name__)

_NODE_KINDS = {"0": NodeKind.DEPOT, "1": NodeKind.CUSTOMER, "2": NodeKind.STATION}


def _text(element, path, required=True):
    found = element.find(path)
    if found is None or found.text is None:
        if required:
            raise InstanceError(f"benchmark file missing <{path}>")
        return None
    return found.text.strip()


def _float(element, path, required=True):
    value = _text(element, path, required)
    if value is None:
        return None
    try:
        return float(value)
    except ValueError as e:
        raise InstanceError(f"benchmark field <{path}> is not a number: {value!r}") from e


def parse_benchmark(data, overrides=None, name="unnamed"):
    """
    Parse a benchmark XML document into a validated instance.

    This method:
    1. Reads node records and station technologies, renumbering them
       0..n-1 with the depot first
    2. Reads speed, consumption rate and battery capacity of the vehicle
    3. Rescales the charging breakpoints to Q^max
    4. Applies policy overrides (Q^T and Q^G default to 30% / 80% of Q^max)

    Args:
        data (bytes): XML document
        overrides (dict, optional): PolicyParams values replacing defaults
        name (str): instance name

    Returns:
        Instance: the validated instance
    """
    try:
        root = ET.fromstring(data)
    except ET.ParseError as e:
        raise InstanceError(f"malformed benchmark file: {e}") from e

    profile = root.find("fleet/vehicle_profile")
    if profile is None:
        raise InstanceError("benchmark file missing <fleet/vehicle_profile>")

    service_times = {}
    for request in root.iterfind("requests/request"):
        node_id = request.get("node")
        duration = _float(request, "service_time", required=False)
        if node_id is not None and duration is not None:
            service_times[int(node_id)] = duration

    records = []
    for record in root.iterfind("network/nodes/node"):
        kind = _NODE_KINDS.get(record.get("type"))
        if kind is None:
            raise InstanceError(f"node {record.get('id')}: unknown node type {record.get('type')!r}")
        try:
            file_id = int(record.get("id"))
        except (TypeError, ValueError) as e:
            raise InstanceError(f"node id {record.get('id')!r} is not an integer") from e
        records.append((file_id, kind, record))
    if not records:
        raise InstanceError("benchmark file has no nodes")
    file_ids = [file_id for file_id, _, _ in records]
    if len(set(file_ids)) != len(file_ids):
        raise InstanceError("benchmark file repeats node ids")

    # Depot first, then the file order: ids become 0..n-1
    records.sort(key=lambda entry: entry[1] != NodeKind.DEPOT)
    nodes = []
    for new_id, (file_id, kind, record) in enumerate(records):
        technology = _text(record, "custom/cs_type") if kind == NodeKind.STATION else None
        nodes.append(Node(
            id=new_id,
            kind=kind,
            x=_float(record, "cx"),
            y=_float(record, "cy"),
            technology=technology,
            service_time=service_times.get(file_id, 0.0),
        ))
    if [file_id for file_id, _, _ in records] != list(range(len(records))):
        logger.info("benchmark %s: node ids renumbered to 0..%d", name, len(records) - 1)

    speed = _float(profile, "speed_factor")
    rate = _float(profile, "custom/consumption_rate")
    battery = _float(profile, "custom/battery_capacity")

    # Q^T / Q^G follow Q^max unless they are overridden explicitly
    overrides = dict(overrides or {})
    q_max = float(overrides.pop("q_max", PolicyParams().q_max))
    base = PolicyParams.from_fractions(q_max=q_max, consumption_rate=rate, speed=speed)
    params = coerce_params(overrides, base) if overrides else base

    scale = params.q_max / battery
    curves = {}
    for function in profile.iterfind("custom/charging_functions/function"):
        technology = function.get("cs_type")
        points = []
        for breakpoint in function.iterfind("breakpoint"):
            soc = _float(breakpoint, "battery_level")
            time = _float(breakpoint, "charging_time")
            points.append((time * scale, soc * scale))
        curves[technology] = ChargingFunction(tuple(points))

    logger.debug("benchmark %s: speed=%s rate=%s battery=%s scale=%.4f",
                 name, speed, rate, battery, scale)
    return build_instance(nodes, curves, params, name)
