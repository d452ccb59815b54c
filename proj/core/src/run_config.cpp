// Copyright 2026 The qcnet Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qcnet/run_config.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "qcnet/error.hpp"

namespace qcnet {

namespace {

using json = nlohmann::json;

template <typename T>
T get_as(const json& v, const std::string& key) {
  try {
    if constexpr (std::is_unsigned_v<T>) {
      if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
        throw ConfigError(key + ": expected a non-negative integer");
      }
    } else if constexpr (std::is_integral_v<T>) {
      if (!v.is_number_integer()) throw ConfigError(key + ": expected an integer");
    } else if constexpr (std::is_floating_point_v<T>) {
      if (!v.is_number()) throw ConfigError(key + ": expected a number");
    } else {
      if (!v.is_string()) throw ConfigError(key + ": expected a string");
    }
    return v.get<T>();
  } catch (const json::exception&) {
    throw ConfigError(key + ": bad value");
  }
}

Complex get_complex(const json& v, const std::string& key) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    return {v[0].get<double>(), v[1].get<double>()};
  }
  throw ConfigError(key + ": expected a number or [re, im]");
}

}  // namespace

int RunConfig::width() const {
  switch (arch) {
    case Architecture::Qcnn:
      return hidden;
    case Architecture::Qctn:
      return bond;
    case Architecture::Vanilla:
      return 0;
  }
  return 0;
}

RunConfig parse_run_config(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config: top level must be an object");

  RunConfig c;
  for (const auto& [key, v] : doc.items()) {
    if (key == "d") c.data.d = get_as<int>(v, key);
    else if (key == "n_ps") c.data.n_ps = get_as<int>(v, key);
    else if (key == "state") {
      const auto s = get_as<std::string>(v, key);
      if (s == "weak") c.data.state = StateTag::WeakCoherent;
      else if (s == "noon") c.data.state = StateTag::Noon;
      else throw ConfigError("state: expected \"weak\" or \"noon\"");
    }
    else if (key == "alpha1") c.data.coherent.alpha1 = get_complex(v, key);
    else if (key == "alpha2") c.data.coherent.alpha2 = get_complex(v, key);
    else if (key == "n_label") c.data.n_label = get_as<std::uint64_t>(v, key);
    else if (key == "split") c.data.split = c.train.split = get_as<double>(v, key);
    else if (key == "label_mode") {
      const auto s = get_as<std::string>(v, key);
      if (s == "exact") c.data.label_mode = LabelMode::Exact;
      else if (s == "sampled") c.data.label_mode = LabelMode::Sampled;
      else throw ConfigError("label_mode: expected \"exact\" or \"sampled\"");
    }
    else if (key == "p") c.data.p = get_as<std::uint64_t>(v, key);
    else if (key == "unitary_seed") c.data.unitary_seed = get_as<std::uint64_t>(v, key);
    else if (key == "theta_seed") c.data.theta_seed = get_as<std::uint64_t>(v, key);
    else if (key == "arch") {
      try {
        c.arch = parse_architecture(get_as<std::string>(v, key));
      } catch (const Error&) {
        throw ConfigError("arch: expected \"qcnn\", \"qctn\" or \"vanilla\"");
      }
    }
    else if (key == "hidden") c.hidden = get_as<int>(v, key);
    else if (key == "bond") c.bond = get_as<int>(v, key);
    else if (key == "beta") c.beta = get_as<double>(v, key);
    else if (key == "learning_rate") c.train.learning_rate = get_as<double>(v, key);
    else if (key == "batch") c.train.batch = get_as<std::size_t>(v, key);
    else if (key == "epochs") c.train.epochs = get_as<int>(v, key);
    else if (key == "beta1") c.train.beta1 = get_as<double>(v, key);
    else if (key == "beta2") c.train.beta2 = get_as<double>(v, key);
    else if (key == "epsilon") c.train.epsilon = get_as<double>(v, key);
    else if (key == "seed") c.train.seed = get_as<std::uint64_t>(v, key);
    else if (key == "threads") c.data.threads = c.train.threads = get_as<unsigned>(v, key);
    else if (key == "unitary") c.unitary = get_as<std::string>(v, key);
    else if (key == "dataset") c.dataset = get_as<std::string>(v, key);
    else if (key == "checkpoint") c.checkpoint = get_as<std::string>(v, key);
    else if (key == "metrics_dir") c.metrics_dir = get_as<std::string>(v, key);
    else throw ConfigError("unknown config key: " + key);
  }
  if (c.hidden < 1) throw ConfigError("hidden: must be >= 1");
  if (c.bond < 1) throw ConfigError("bond: must be >= 1");
  if (!(c.beta > 0.0)) throw ConfigError("beta: must be positive");
  c.data.validate();
  c.train.validate();
  return c;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_run_config(text.str());
}

}  // namespace qcnet
