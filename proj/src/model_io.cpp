#include "concept_nmr/model_io.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "concept_nmr/cxt.hpp"
#include "concept_nmr/error.hpp"

namespace cnmr::io {

namespace {

const Json& field(const Json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) throw InputError(where + ": expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw InputError(where + ": missing field '" + key + "'");
  return *it;
}

std::string string_field(const Json& obj, const char* key, const std::string& where) {
  const Json& v = field(obj, key, where);
  if (!v.is_string()) throw InputError(where + ": field '" + key + "' must be a string");
  return v.get<std::string>();
}

const Json& array_field(const Json& obj, const char* key, const std::string& where) {
  const Json& v = field(obj, key, where);
  if (!v.is_array()) throw InputError(where + ": field '" + key + "' must be an array");
  return v;
}

std::vector<std::string> strings(const Json& arr, const std::string& where) {
  std::vector<std::string> out;
  for (const auto& v : arr) {
    if (!v.is_string()) throw InputError(where + ": expected an array of strings");
    out.push_back(v.get<std::string>());
  }
  return out;
}

std::string join_names(const std::vector<std::string>& names) {
  std::string out;
  for (const auto& n : names) out += (out.empty() ? "" : ", ") + n;
  return out;
}

fca::FormalContext inline_context(const Json& c, const std::string& where) {
  auto objects = strings(array_field(c, "objects", where), where + ".objects");
  auto attributes = strings(array_field(c, "attributes", where), where + ".attributes");
  auto rows_text = strings(array_field(c, "incidence", where), where + ".incidence");
  if (rows_text.size() != objects.size())
    throw InputError(where + ": incidence has " + std::to_string(rows_text.size()) + " rows for " +
                     std::to_string(objects.size()) + " objects");
  std::vector<IndexSet> rows;
  for (std::size_t i = 0; i < rows_text.size(); ++i) {
    const auto& r = rows_text[i];
    if (r.size() != attributes.size())
      throw InputError(where + ": incidence row " + std::to_string(i + 1) + " has wrong length");
    IndexSet bits(attributes.size());
    for (std::size_t j = 0; j < r.size(); ++j) {
      if (r[j] == 'X' || r[j] == 'x')
        bits.set(j);
      else if (r[j] != '.')
        throw InputError(where + ": invalid incidence character '" + std::string(1, r[j]) + "'");
    }
    rows.push_back(std::move(bits));
  }
  try {
    return fca::FormalContext(std::move(objects), std::move(attributes), std::move(rows));
  } catch (const InputError& e) {
    throw InputError(where + ": " + e.what());
  }
}

}  // namespace

ModelDocument parse_model(std::string_view text, const std::filesystem::path& base_dir) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(std::string("model JSON: ") + e.what());
  }
  if (!doc.is_object()) throw InputError("model JSON: top level must be an object");

  auto variables = strings(array_field(doc, "variables", "model"), "variables");

  std::vector<nmr::NamedContext> contexts;
  std::map<std::string, std::size_t, std::less<>> context_index;
  const Json& ctx_arr = array_field(doc, "contexts", "model");
  for (std::size_t i = 0; i < ctx_arr.size(); ++i) {
    const Json& c = ctx_arr[i];
    const std::string where = "contexts[" + std::to_string(i) + "]";
    nmr::NamedContext nc;
    nc.name = string_field(c, "name", where);
    if (c.is_object() && c.contains("cxt")) {
      nc.source = string_field(c, "cxt", where);
      nc.context = std::make_shared<const fca::FormalContext>(fca::read_cxt_file(base_dir / nc.source));
    } else {
      nc.context = std::make_shared<const fca::FormalContext>(inline_context(c, where));
    }
    if (!context_index.emplace(nc.name, contexts.size()).second)
      throw InputError(where + ": duplicate context '" + nc.name + "'");
    contexts.push_back(std::move(nc));
  }

  std::vector<nmr::NamedValuation> valuations;
  std::map<std::string, std::size_t, std::less<>> valuation_index;
  const Json& val_arr = array_field(doc, "valuations", "model");
  for (std::size_t i = 0; i < val_arr.size(); ++i) {
    const Json& v = val_arr[i];
    const std::string where = "valuations[" + std::to_string(i) + "]";
    nmr::NamedValuation nv;
    nv.name = string_field(v, "name", where);
    const std::string ctx_name = string_field(v, "context", where);
    auto ci = context_index.find(ctx_name);
    if (ci == context_index.end()) throw InputError(where + ": unknown context '" + ctx_name + "'");
    nv.context = ci->second;
    const auto& ctx_ptr = contexts[nv.context].context;
    const auto& ctx = *ctx_ptr;

    const Json& assign = field(v, "assign", where);
    if (!assign.is_object()) throw InputError(where + ": 'assign' must be an object");
    std::map<std::string, fca::Concept, std::less<>> valuation;
    for (const auto& [var, item] : assign.items()) {
      const std::string vwhere = "valuation '" + nv.name + "', variable '" + var + "'";
      IndexSet extent;
      try {
        extent = ctx.object_set(strings(array_field(item, "extent", vwhere), vwhere));
      } catch (const InputError& e) {
        throw InputError(vwhere + ": " + e.what());
      }
      fca::Concept closed = fca::close_extent(ctx, extent);
      if (closed.extent != extent) {
        throw InputError(vwhere + ": extent is not Galois-stable (closure adds " +
                         join_names(ctx.object_names(closed.extent - extent)) + ")");
      }
      if (item.contains("intent")) {
        IndexSet intent;
        try {
          intent = ctx.attribute_set(strings(array_field(item, "intent", vwhere), vwhere));
        } catch (const InputError& e) {
          throw InputError(vwhere + ": " + e.what());
        }
        if (intent != closed.intent)
          throw InputError(vwhere + ": intent does not match the extent (expected {" +
                           join_names(ctx.attribute_names(closed.intent)) + "})");
      }
      valuation.emplace(var, std::move(closed));
    }
    nv.model = std::make_shared<const logic::PolarityModel>(ctx_ptr, std::move(valuation));
    if (!valuation_index.emplace(nv.name, valuations.size()).second)
      throw InputError(where + ": duplicate valuation '" + nv.name + "'");
    valuations.push_back(std::move(nv));
  }

  std::vector<std::string> states;
  std::vector<std::vector<nmr::PointedModel>> labels;
  std::map<std::string, std::size_t, std::less<>> state_index;
  const Json& st_arr = array_field(doc, "states", "model");
  for (std::size_t i = 0; i < st_arr.size(); ++i) {
    const Json& s = st_arr[i];
    const std::string where = "states[" + std::to_string(i) + "]";
    const std::string name = string_field(s, "name", where);
    std::vector<nmr::PointedModel> label;
    const Json& lab = array_field(s, "label", where);
    for (std::size_t k = 0; k < lab.size(); ++k) {
      const std::string lwhere = where + ".label[" + std::to_string(k) + "]";
      const std::string val_name = string_field(lab[k], "valuation", lwhere);
      auto vi = valuation_index.find(val_name);
      if (vi == valuation_index.end()) throw InputError(lwhere + ": unknown valuation '" + val_name + "'");
      const auto& nv = valuations[vi->second];
      if (lab[k].contains("context") && string_field(lab[k], "context", lwhere) != contexts[nv.context].name)
        throw InputError(lwhere + ": valuation '" + val_name + "' belongs to context '" +
                         contexts[nv.context].name + "'");
      const std::string point = string_field(lab[k], "point", lwhere);
      auto obj = nv.model->context().find_object(point);
      if (!obj) throw InputError(lwhere + ": unknown object '" + point + "'");
      label.push_back({vi->second, *obj});
    }
    if (!state_index.emplace(name, states.size()).second) throw InputError(where + ": duplicate state '" + name + "'");
    states.push_back(name);
    labels.push_back(std::move(label));
  }

  nmr::Preference pref(states.size());
  const Json& pref_arr = doc.contains("pref") ? array_field(doc, "pref", "model") : Json::array();
  for (std::size_t i = 0; i < pref_arr.size(); ++i) {
    const Json& p = pref_arr[i];
    const std::string where = "pref[" + std::to_string(i) + "]";
    if (!p.is_array() || p.size() != 2 || !p[0].is_string() || !p[1].is_string())
      throw InputError(where + ": expected a pair of state names");
    auto a = state_index.find(p[0].get<std::string>());
    auto b = state_index.find(p[1].get<std::string>());
    if (a == state_index.end() || b == state_index.end()) throw InputError(where + ": unknown state");
    pref.add(a->second, b->second);
  }

  Json metadata = doc.contains("metadata") ? doc["metadata"] : Json();
  return {nmr::PreferenceModel(std::move(variables), std::move(contexts), std::move(valuations), std::move(states),
                               std::move(labels), std::move(pref)),
          std::move(metadata)};
}

ModelDocument load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open model file '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_model(buffer.str(), path.parent_path());
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

Json model_to_json(const nmr::PreferenceModel& model, const Json& metadata) {
  Json doc = Json::object();
  doc["variables"] = model.variables();

  Json contexts = Json::array();
  for (const auto& c : model.contexts()) {
    Json j = Json::object();
    j["name"] = c.name;
    if (!c.source.empty()) {
      j["cxt"] = c.source;
    } else {
      j["objects"] = c.context->objects();
      j["attributes"] = c.context->attributes();
      Json rows = Json::array();
      for (std::size_t g = 0; g < c.context->object_count(); ++g) {
        std::string r;
        for (std::size_t m = 0; m < c.context->attribute_count(); ++m) r += c.context->incident(g, m) ? 'X' : '.';
        rows.push_back(r);
      }
      j["incidence"] = rows;
    }
    contexts.push_back(std::move(j));
  }
  doc["contexts"] = std::move(contexts);

  Json valuations = Json::array();
  for (const auto& v : model.valuations()) {
    Json j = Json::object();
    j["name"] = v.name;
    j["context"] = model.contexts()[v.context].name;
    Json assign = Json::object();
    const auto& ctx = v.model->context();
    for (const auto& var : model.variables()) {
      const auto& c = v.model->value(var);
      Json item = Json::object();
      item["extent"] = ctx.object_names(c.extent);
      item["intent"] = ctx.attribute_names(c.intent);
      assign[var] = std::move(item);
    }
    j["assign"] = std::move(assign);
    valuations.push_back(std::move(j));
  }
  doc["valuations"] = std::move(valuations);

  Json states = Json::array();
  for (std::size_t s = 0; s < model.state_count(); ++s) {
    Json j = Json::object();
    j["name"] = model.states()[s];
    Json label = Json::array();
    for (const auto& pm : model.label(s)) {
      const auto& v = model.valuations()[pm.valuation];
      Json l = Json::object();
      l["context"] = model.contexts()[v.context].name;
      l["valuation"] = v.name;
      l["point"] = v.model->context().objects()[pm.point];
      label.push_back(std::move(l));
    }
    j["label"] = std::move(label);
    states.push_back(std::move(j));
  }
  doc["states"] = std::move(states);

  Json pref = Json::array();
  for (const auto& [s, t] : model.preference().pairs()) pref.push_back(Json::array({model.states()[s], model.states()[t]}));
  doc["pref"] = std::move(pref);

  if (!metadata.is_null() && !(metadata.is_object() && metadata.empty())) doc["metadata"] = metadata;
  return doc;
}

std::string emit_model(const nmr::PreferenceModel& model, const Json& metadata) {
  return model_to_json(model, metadata).dump(2) + "\n";
}

}  // namespace cnmr::io
