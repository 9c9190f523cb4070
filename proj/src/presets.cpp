#include "formtrack/scenario_io.hpp"

#include "formtrack/errors.hpp"

namespace formtrack {

namespace {

// Bundled presets. Byte-identical copies ship as canonical examples under
// scenarios/; a test keeps the two in sync.
constexpr const char* k_paper_linear = R"json({
  "agents": {
    "count": 3,
    "initial_positions": [
      [
        2.6643,
        2.8466690948965834
      ],
      [
        4.6643,
        2.8466690948965834
      ],
      [
        4.6714,
        6.306661810206833
      ]
    ]
  },
  "formation": {
    "edges": [
      {
        "i": 0,
        "j": 1,
        "r": 2.0,
        "r_lo": 1.8,
        "r_hi": 2.2
      },
      {
        "i": 1,
        "j": 2,
        "r": 3.46,
        "r_lo": 3.2,
        "r_hi": 3.6
      },
      {
        "i": 2,
        "j": 0,
        "r": 4.0,
        "r_lo": 3.8,
        "r_hi": 4.2
      }
    ]
  },
  "target": {
    "kind": "linear",
    "position": [
      0.0,
      0.0
    ],
    "velocity": [
      0.2,
      0.2
    ]
  },
  "control": {
    "law": "blf",
    "K_T": 0.03,
    "K": 0.01,
    "u_max": 3.0,
    "standoffs": [
      2.0,
      2.0,
      2.0
    ]
  },
  "noise": {
    "sd_velocity": 0.02,
    "sd_distance": 0.02,
    "seed": 1
  },
  "integration": {
    "dt": 0.01,
    "scheme": "euler",
    "max_substeps": 64
  },
  "run": {
    "duration": 100.0,
    "name": "paper_linear"
  }
}
)json";

constexpr const char* k_paper_circular = R"json({
  "agents": {
    "count": 3,
    "initial_positions": [
      [
        7.6643,
        2.8466690948965834
      ],
      [
        9.6643,
        2.8466690948965834
      ],
      [
        9.6714,
        6.306661810206833
      ]
    ]
  },
  "formation": {
    "edges": [
      {
        "i": 0,
        "j": 1,
        "r": 2.0,
        "r_lo": 1.8,
        "r_hi": 2.2
      },
      {
        "i": 1,
        "j": 2,
        "r": 3.46,
        "r_lo": 3.2,
        "r_hi": 3.6
      },
      {
        "i": 2,
        "j": 0,
        "r": 4.0,
        "r_lo": 3.8,
        "r_hi": 4.2
      }
    ]
  },
  "target": {
    "kind": "circular",
    "center": [
      0.0,
      0.0
    ],
    "radius": 5.0,
    "angular_rate": 0.2,
    "phase": 0.0
  },
  "control": {
    "law": "blf",
    "K_T": 0.03,
    "K": 0.01,
    "u_max": 3.0,
    "standoffs": [
      2.0,
      2.0,
      2.0
    ]
  },
  "noise": {
    "sd_velocity": 0.02,
    "sd_distance": 0.02,
    "seed": 1
  },
  "integration": {
    "dt": 0.01,
    "scheme": "euler",
    "max_substeps": 64
  },
  "run": {
    "duration": 100.0,
    "name": "paper_circular"
  }
}
)json";

}  // namespace

std::vector<std::string> preset_names() { return {"paper_linear", "paper_circular"}; }

std::string preset_text(std::string_view name) {
    if (name == "paper_linear") return k_paper_linear;
    if (name == "paper_circular") return k_paper_circular;
    throw ValidationError("unknown preset '" + std::string(name) + "'");
}

Scenario load_preset(std::string_view name) {
    return parse_scenario(preset_text(name), "preset:" + std::string(name));
}

}  // namespace formtrack
