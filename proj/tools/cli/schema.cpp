#include "cli/config.hpp"

namespace tfmod::cli {

const char* config_schema() {
  return R"json({
  "$schema": "https://json-schema.org/draft/2020-12/schema",
  "$id": "https://tfmod.invalid/schema/config-v1.json",
  "title": "tfmod experiment configuration",
  "oneOf": [
    {"$ref": "#/$defs/experiment"},
    {
      "type": "object",
      "required": ["experiments"],
      "additionalProperties": false,
      "properties": {
        "max_dim": {"type": "integer", "minimum": 1},
        "experiments": {"type": "array", "minItems": 1, "items": {"$ref": "#/$defs/experiment"}}
      }
    }
  ],
  "$defs": {
    "real": {"oneOf": [{"type": "number"}, {"enum": ["inf", "-inf", "nan"]}]},
    "exponent": {"oneOf": [{"type": "number", "exclusiveMinimum": 0}, {"const": "inf"}]},
    "exponents": {"type": "array", "minItems": 1, "items": {"$ref": "#/$defs/exponent"}},
    "sizes": {"oneOf": [{"type": "integer", "minimum": 1}, {"type": "array", "items": {"type": "integer", "minimum": 1}}]},
    "reals": {"oneOf": [{"$ref": "#/$defs/real"}, {"type": "array", "items": {"$ref": "#/$defs/real"}}]},
    "grid": {
      "type": "object",
      "required": ["n"],
      "additionalProperties": false,
      "properties": {
        "n": {"type": "array", "minItems": 1, "items": {"type": "integer", "minimum": 2}},
        "step": {"type": "array", "items": {"type": "number", "exclusiveMinimum": 0}}
      }
    },
    "weight": {
      "type": "object",
      "required": ["family"],
      "additionalProperties": false,
      "properties": {
        "family": {"enum": ["constant", "polynomial", "exponential", "tilt", "anisotropic", "product", "sum", "reciprocal", "dilation"]},
        "dim": {"type": "integer", "minimum": 1},
        "params": {
          "type": "object",
          "additionalProperties": false,
          "properties": {
            "c": {"$ref": "#/$defs/real"},
            "s": {"$ref": "#/$defs/real"},
            "r": {"$ref": "#/$defs/real"},
            "u": {"type": "array", "items": {"$ref": "#/$defs/real"}},
            "theta": {"type": "array", "items": {"$ref": "#/$defs/real"}}
          }
        },
        "children": {"type": "array", "minItems": 1, "items": {"$ref": "#/$defs/weight"}}
      }
    },
    "mixed_norm_spec": {
      "type": "object",
      "required": ["p"],
      "additionalProperties": false,
      "properties": {
        "p": {"$ref": "#/$defs/exponents"},
        "sigma": {"type": "array", "description": "1-based permutation", "items": {"type": "integer", "minimum": 1}},
        "omega": {"$ref": "#/$defs/weight"},
        "step": {"type": "array", "items": {"type": "number", "exclusiveMinimum": 0}}
      }
    },
    "signal": {
      "oneOf": [
        {"enum": ["gaussian", "hermite", "delta", "random", "block"]},
        {
          "type": "object",
          "required": ["kind"],
          "additionalProperties": false,
          "properties": {
            "kind": {"enum": ["gaussian", "hermite", "delta", "random", "block"]},
            "width": {"$ref": "#/$defs/reals"},
            "order": {"type": "integer", "minimum": 0},
            "position": {"type": "array", "items": {"type": "integer"}},
            "radius": {"$ref": "#/$defs/reals"},
            "seed": {"type": "integer", "minimum": 0},
            "normalize": {"type": "boolean"},
            "scale": {"$ref": "#/$defs/real"}
          }
        },
        {
          "type": "object",
          "required": ["re"],
          "additionalProperties": false,
          "properties": {
            "re": {"type": "array", "items": {"$ref": "#/$defs/real"}},
            "im": {"type": "array", "items": {"$ref": "#/$defs/real"}}
          }
        }
      ]
    },
    "lattice": {
      "type": "object",
      "required": ["a", "b"],
      "additionalProperties": false,
      "properties": {"a": {"$ref": "#/$defs/sizes"}, "b": {"$ref": "#/$defs/sizes"}}
    },
    "conv_case": {
      "type": "object",
      "required": ["estimate"],
      "properties": {
        "estimate": {"enum": ["semidiscrete", "dilation", "wiener"]},
        "part": {"enum": [1, 2]},
        "theta": {"$ref": "#/$defs/sizes"},
        "block": {"$ref": "#/$defs/sizes"},
        "q": {"oneOf": [{"$ref": "#/$defs/exponent"}, {"type": "array", "minItems": 3, "maxItems": 3, "items": {"$ref": "#/$defs/exponent"}}]},
        "p": {"oneOf": [{"$ref": "#/$defs/exponents"}, {"type": "array", "minItems": 3, "maxItems": 3, "items": {"$ref": "#/$defs/exponents"}}]},
        "sigma": {"type": "array", "items": {"type": "integer", "minimum": 1}},
        "omega": {"oneOf": [{"$ref": "#/$defs/weight"}, {"type": "array", "minItems": 3, "maxItems": 3, "items": {"$ref": "#/$defs/weight"}}]},
        "v": {"$ref": "#/$defs/weight"},
        "a": {"$ref": "#/$defs/signal"},
        "f": {"$ref": "#/$defs/signal"},
        "f1": {"$ref": "#/$defs/signal"},
        "f2": {"$ref": "#/$defs/signal"},
        "tolerance": {"type": "number", "exclusiveMinimum": 0}
      }
    },
    "check": {
      "type": "object",
      "required": ["type"],
      "properties": {
        "type": {"enum": ["window-independence", "embedding", "gabor-equivalence", "wiener-equivalence", "compact-support", "local-bound", "decay-fit"]},
        "label": {"type": "string"},
        "n_signals": {"type": "integer", "minimum": 0},
        "bound": {"$ref": "#/$defs/real"},
        "tol": {"type": "number", "minimum": 0},
        "expected_spread": {"type": "number"},
        "rel_tol": {"type": "number", "minimum": 0},
        "window": {"$ref": "#/$defs/signal"},
        "window2": {"$ref": "#/$defs/signal"},
        "spec": {"$ref": "#/$defs/mixed_norm_spec"},
        "spec2": {"$ref": "#/$defs/mixed_norm_spec"},
        "lattice": {"$ref": "#/$defs/lattice"},
        "dual": {"enum": ["canonical", "tight"]},
        "block": {"$ref": "#/$defs/sizes"},
        "support_radius": {"type": "number", "minimum": 0},
        "window_radius": {"type": "number", "minimum": 0},
        "q": {"$ref": "#/$defs/exponent"},
        "p_list": {"$ref": "#/$defs/exponents"},
        "omega": {"$ref": "#/$defs/weight"},
        "p": {"$ref": "#/$defs/exponent"},
        "radius": {"type": "number", "exclusiveMinimum": 0},
        "n_centers": {"type": "integer", "minimum": 0},
        "factor": {"type": "number", "minimum": 1}
      }
    },
    "experiment": {
      "type": "object",
      "required": ["kind", "grid"],
      "properties": {
        "name": {"type": "string"},
        "kind": {"enum": ["norm", "gabor-dual", "conv-sweep", "verify-suite", "report"]},
        "grid": {"$ref": "#/$defs/grid"},
        "seed": {"type": "integer", "minimum": 0},
        "output": {"type": "string", "description": "path prefix relative to --out"},
        "format": {"enum": ["csv", "json", "both"]},
        "plot": {"type": "boolean", "description": "SVG heatmap of |V|, d = 1 only"},
        "max_dim": {"type": "integer", "minimum": 1},
        "norm": {"enum": ["modulation", "amalgam", "fourier-lebesgue", "lebesgue"]},
        "signal": {"$ref": "#/$defs/signal"},
        "window": {"$ref": "#/$defs/signal"},
        "spec": {"$ref": "#/$defs/mixed_norm_spec"},
        "p": {"$ref": "#/$defs/exponent"},
        "q": {"$ref": "#/$defs/exponent"},
        "omega": {"$ref": "#/$defs/weight"},
        "anchor": {"$ref": "#/$defs/reals"},
        "lattice": {"$ref": "#/$defs/lattice"},
        "tol": {"type": "number", "exclusiveMinimum": 0},
        "max_iter": {"type": "integer", "minimum": 1},
        "n_signals": {"type": "integer", "minimum": 0},
        "sweeps": {
          "type": "array",
          "items": {
            "type": "object",
            "required": ["estimate", "count"],
            "additionalProperties": false,
            "properties": {
              "estimate": {"enum": ["semidiscrete", "dilation", "wiener"]},
              "count": {"type": "integer", "minimum": 0}
            }
          }
        },
        "cases": {"type": "array", "items": {"$ref": "#/$defs/conv_case"}},
        "checks": {"type": "array", "minItems": 1, "items": {"$ref": "#/$defs/check"}},
        "report": {"$ref": "#/$defs/check"}
      }
    }
  }
}
)json";
}

}  // namespace tfmod::cli
