"""
Synthetic Vehicle Dataset
=========================

Seeded generator of used-vehicle descriptions. Every vehicle gets exactly
the eleven schema predicates; numeric values come from fixed ranges and
categorical values from fixed pools whose tokens all have a vector in the
bundled fixture vector file.

Randomness: NumPy PCG64 bit generator, drawn only through
``Generator.integers`` so the stream is stable for a given seed.
"""

import logging
from typing import List, Tuple

import numpy as np

from app.models.schemas import GeneratorConfig
from app.services.rdf_core import XSD, Graph, Iri, Literal, Triple

logger = logging.getLogger(__name__)

VEHICLE_NS = "http://example.org/vehicle#"
VEHICLE_ITEMS = "http://example.org/vehicles/"

# Schema predicates, in emission order
SCHEMA_PREDICATES: Tuple[str, ...] = (
    "release_year",
    "mileage",
    "fuel_type",
    "color",
    "nb_doors",
    "nb_seats",
    "made_by",
    "vehicle_type",
    "price",
    "transmission",
    "inspect",
)

COLORS = ("white", "black", "silver", "grey", "red", "blue", "green", "yellow", "orange", "brown", "beige")
FUEL_TYPES = ("petrol", "diesel", "electric", "hybrid", "lpg")
MANUFACTURERS = (
    "TeslaMotors", "Renault", "Peugeot", "Citroen", "Volkswagen", "Toyota",
    "BMW", "Audi", "MercedesBenz", "Ford", "Fiat", "Nissan",
)
TRANSMISSIONS = ("manual", "automatic", "semi-automatic")
VEHICLE_TYPES = ("sedan", "hatchback", "suv", "coupe", "convertible", "wagon", "minivan", "pickup")
INSPECTION_STATUSES = ("passed", "failed", "pending", "exempt")
DOOR_COUNTS = (3, 5)
SEAT_COUNTS = (2, 4, 5, 7)

RELEASE_YEARS = (1998, 2024)
MILEAGE_RANGE = (0, 300_000)
PRICE_RANGE = (1_000, 80_000)

XSD_INTEGER = XSD + "integer"
XSD_DECIMAL = XSD + "decimal"


def predicate_iri(name: str) -> Iri:
    return Iri(VEHICLE_NS + name)


def categorical_tokens() -> List[str]:
    """Every categorical surface form the generator can emit (for vocabulary checks)."""
    return [
        *COLORS, *FUEL_TYPES, *TRANSMISSIONS, *VEHICLE_TYPES, *INSPECTION_STATUSES,
        *(VEHICLE_NS + maker for maker in MANUFACTURERS),
    ]


class VehicleDatasetGenerator:
    """
    Deterministic vehicle dataset generator.
    """

    def __init__(self, config: GeneratorConfig):
        self.config = config
        self.logger = logging.getLogger(__name__)

    def _draw(self, rng: np.random.Generator, low: int, high: int) -> int:
        # inclusive bounds
        return int(rng.integers(low, high, endpoint=True))

    def _pick(self, rng: np.random.Generator, pool):
        return pool[self._draw(rng, 0, len(pool) - 1)]

    def _vehicle(self, rng: np.random.Generator, subject: Iri) -> List[Triple]:
        values = {
            "release_year": Literal(str(self._draw(rng, *RELEASE_YEARS)), datatype=XSD_INTEGER),
            "mileage": Literal(str(self._draw(rng, *MILEAGE_RANGE)), datatype=XSD_INTEGER),
            "fuel_type": Literal(self._pick(rng, FUEL_TYPES)),
            "color": Literal(self._pick(rng, COLORS)),
            "nb_doors": Literal(str(self._pick(rng, DOOR_COUNTS)), datatype=XSD_INTEGER),
            "nb_seats": Literal(str(self._pick(rng, SEAT_COUNTS)), datatype=XSD_INTEGER),
            "made_by": Iri(VEHICLE_NS + self._pick(rng, MANUFACTURERS)),
            "vehicle_type": Literal(self._pick(rng, VEHICLE_TYPES)),
            "price": Literal(str(self._draw(rng, *PRICE_RANGE)), datatype=XSD_DECIMAL),
            "transmission": Literal(self._pick(rng, TRANSMISSIONS)),
            "inspect": Literal(self._pick(rng, INSPECTION_STATUSES)),
        }
        return [Triple(subject, predicate_iri(name), values[name]) for name in SCHEMA_PREDICATES]

    def generate(self) -> Graph:
        rng = np.random.Generator(np.random.PCG64(self.config.seed))
        width = max(4, len(str(self.config.entity_count)))

        triples: List[Triple] = []
        for index in range(1, self.config.entity_count + 1):
            subject = Iri(f"{VEHICLE_ITEMS}m{index:0{width}d}")
            triples.extend(self._vehicle(rng, subject))

        self.logger.info(
            f"🚗 Generated {self.config.entity_count} vehicles ({len(triples)} triples) with seed {self.config.seed}"
        )
        return Graph.from_triples(triples)


def generate_vehicle_dataset(config: GeneratorConfig) -> Graph:
    return VehicleDatasetGenerator(config).generate()
