#include "tsci/sweep_config.hpp"

#include "tsci/error.hpp"

namespace tsci {

using nlohmann::json;

namespace {

template <class T>
void read(const json& obj, const char* key, T& out) {
  if (obj.contains(key) && !obj.at(key).is_null()) out = obj.at(key).get<T>();
}

template <class T>
void read_optional(const json& obj, const char* key, std::optional<T>& out) {
  if (obj.contains(key) && !obj.at(key).is_null()) out = obj.at(key).get<T>();
}

void read_embedding(const json& obj, EmbeddingChoice& e) {
  read_optional(obj, "lag", e.lag);
  read_optional(obj, "dim", e.dim);
  read(obj, "acf_threshold", e.acf_threshold);
  read(obj, "fnn_tolerance", e.fnn_tolerance);
  read(obj, "max_dim", e.max_dim);
}

void read_derivative(const json& obj, DerivativeConfig& d) {
  if (obj.contains("method")) d.method = parse_derivative_method(obj.at("method").get<std::string>());
  read(obj, "window", d.window);
  read(obj, "polyorder", d.polyorder);
}

json embedding_json(const EmbeddingChoice& e) {
  json j{{"acf_threshold", e.acf_threshold}, {"fnn_tolerance", e.fnn_tolerance}, {"max_dim", e.max_dim}};
  j["lag"] = e.lag ? json(*e.lag) : json(nullptr);
  j["dim"] = e.dim ? json(*e.dim) : json(nullptr);
  return j;
}

json derivative_json(const DerivativeConfig& d) {
  return {{"method", std::string(to_string(d.method))}, {"window", d.window}, {"polyorder", d.polyorder}};
}

}  // namespace

SweepSpec sweep_spec_from_json(const json& doc) {
  try {
    SweepSpec spec;
    if (!doc.is_object()) throw Error(ErrorCode::ParseError, "sweep config must be a JSON object");
    if (doc.contains("kind")) spec.kind = parse_sweep_kind(doc.at("kind").get<std::string>());
    read(doc, "grid", spec.grid);
    read(doc, "trials", spec.trials);
    if (doc.contains("methods")) {
      spec.methods.clear();
      for (const auto& m : doc.at("methods")) spec.methods.push_back(parse_method(m.get<std::string>()));
    }
    read(doc, "seed", spec.seed);
    read(doc, "x_variable", spec.x_variable);
    read(doc, "y_variable", spec.y_variable);
    read(doc, "granger_lag", spec.granger_lag);
    read(doc, "mi_k", spec.mi_k);
    read(doc, "sine_period", spec.sine_period);
    read(doc, "threads", spec.threads);
    if (doc.contains("corrupted_derivative")) read_derivative(doc.at("corrupted_derivative"), spec.corrupted_derivative);

    if (doc.contains("system")) {
      const json& s = doc.at("system");
      read(s, "coupling", spec.system.coupling);
      read(s, "dt_integrate", spec.system.dt_integrate);
      read(s, "dt_sample", spec.system.dt_sample);
      read(s, "n_samples", spec.system.n_samples);
      read(s, "transient_time", spec.system.transient_time);
      if (s.contains("initial_state") && !s.at("initial_state").is_null()) {
        spec.system.initial_state = s.at("initial_state").get<SystemState>();
      }
    }
    if (doc.contains("pipeline")) {
      const json& p = doc.at("pipeline");
      PipelineConfig& c = spec.pipeline;
      if (p.contains("x_embedding")) read_embedding(p.at("x_embedding"), c.x_embedding);
      if (p.contains("y_embedding")) read_embedding(p.at("y_embedding"), c.y_embedding);
      if (p.contains("derivative")) read_derivative(p.at("derivative"), c.derivative);
      read(p, "k", c.k);
      read_optional(p, "theiler_window", c.theiler_window);
      read_optional(p, "kr_bandwidth", c.kr_bandwidth);
      read(p, "kr_bandwidth_scale", c.kr_bandwidth_scale);
      read(p, "kr_ridge", c.kr_ridge);
      read(p, "kr_max_train", c.kr_max_train);
    }
    return spec;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("sweep config: ") + e.what());
  }
}

json to_json(const SweepSpec& spec) {
  json methods = json::array();
  for (Method m : spec.methods) methods.push_back(std::string(to_string(m)));
  json system{{"coupling", spec.system.coupling},
              {"dt_integrate", spec.system.dt_integrate},
              {"dt_sample", spec.system.dt_sample},
              {"n_samples", spec.system.n_samples},
              {"transient_time", spec.system.transient_time}};
  system["initial_state"] = spec.system.initial_state ? json(*spec.system.initial_state) : json(nullptr);
  const PipelineConfig& c = spec.pipeline;
  json pipeline{{"x_embedding", embedding_json(c.x_embedding)},
                {"y_embedding", embedding_json(c.y_embedding)},
                {"derivative", derivative_json(c.derivative)},
                {"k", c.k},
                {"kr_bandwidth_scale", c.kr_bandwidth_scale},
                {"kr_ridge", c.kr_ridge},
                {"kr_max_train", c.kr_max_train}};
  pipeline["theiler_window"] = c.theiler_window ? json(*c.theiler_window) : json(nullptr);
  pipeline["kr_bandwidth"] = c.kr_bandwidth ? json(*c.kr_bandwidth) : json(nullptr);
  return {{"kind", std::string(to_string(spec.kind))},
          {"grid", spec.grid},
          {"trials", spec.trials},
          {"methods", methods},
          {"seed", spec.seed},
          {"x_variable", spec.x_variable},
          {"y_variable", spec.y_variable},
          {"granger_lag", spec.granger_lag},
          {"mi_k", spec.mi_k},
          {"sine_period", spec.sine_period},
          {"threads", spec.threads},
          {"corrupted_derivative", derivative_json(spec.corrupted_derivative)},
          {"system", system},
          {"pipeline", pipeline}};
}

}  // namespace tsci
