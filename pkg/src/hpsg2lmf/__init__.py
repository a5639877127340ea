"""Convert Arabic HPSG lexica (TEI feature structures) into an LMF lexical resource."""

from hpsg2lmf.diagnostics import Diagnostic
from hpsg2lmf.fs import (
    FeatureStructure,
    FsList,
    HpsgEntry,
    Lexicon,
    Symbol,
    Text,
    get_path,
    parse_fs,
    parse_lexicon,
    serialize_fs,
    serialize_lexicon,
)
from hpsg2lmf.lmf import LmfLexicalResource, parse_tei, serialize_tei, validate
from hpsg2lmf.merge import MergeKey, Merger, compute_merge_key
from hpsg2lmf.pipeline import Conversion, Converter, FatalError, RunConfig, RunStats, convert, run
from hpsg2lmf.rules import Projector, builtin_rules, mapping_table, project_entry
from hpsg2lmf.schema import (
    LexicalCategory,
    Registry,
    admits_inflected_forms,
    builtin_registry,
    classify,
    load_registry,
)
from hpsg2lmf.synthetic import generate_synthetic_lexicon

__version__ = "0.1.0"

__all__ = [
    "Conversion", "Converter", "Diagnostic", "FatalError", "FeatureStructure", "FsList",
    "HpsgEntry", "LexicalCategory", "Lexicon", "LmfLexicalResource", "MergeKey", "Merger",
    "Projector", "Registry", "RunConfig", "RunStats", "Symbol", "Text",
    "admits_inflected_forms", "builtin_registry", "builtin_rules", "classify",
    "compute_merge_key", "convert", "generate_synthetic_lexicon", "get_path",
    "load_registry", "mapping_table", "parse_fs", "parse_lexicon", "parse_tei",
    "project_entry", "run", "serialize_fs", "serialize_lexicon", "serialize_tei", "validate",
]
