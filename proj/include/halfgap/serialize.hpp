#pragma once

#include <fstream>
#include <string>

#include <json.hpp>

#include "halfgap/exact_distance.hpp"
#include "halfgap/geometry.hpp"
#include "halfgap/ksum.hpp"
#include "halfgap/reduction.hpp"

// File schemas. Structural counts (d, k, n, labels) are plain JSON numbers;
// every value that can outgrow 64 bits (coordinates, list values, weight
// numerators/denominators, thetas) is a decimal string.

namespace halfgap {

using json = nlohmann::ordered_json;

inline json to_json(const Int& v) { return v.to_string(); }

inline Int int_from_json(const json& j) {
  if (!j.is_string()) throw input_error("expected integer-as-string");
  return Int::parse(j.get<std::string>());
}

inline json to_json(const Rat& r) { return json::array({r.num().to_string(), r.den().to_string()}); }

inline Rat rat_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) throw input_error("expected [num, den] pair");
  return Rat(int_from_json(j[0]), int_from_json(j[1]));
}

inline json to_json(const Point& p) {
  json arr = json::array();
  for (const Int& c : p.coords) arr.push_back(to_json(c));
  return arr;
}

inline Point point_from_json(const json& j) {
  if (!j.is_array()) throw input_error("expected coordinate array");
  Point p;
  p.coords.reserve(j.size());
  for (const auto& c : j) p.coords.push_back(int_from_json(c));
  return p;
}

inline json to_json(const Halfspace& h) {
  json w = json::array();
  for (const Int& c : h.w) w.push_back(to_json(c));
  return json{{"w", w}, {"theta", to_json(h.theta)}};
}

inline Halfspace halfspace_from_json(const json& j) {
  Halfspace h;
  for (const auto& c : j.at("w")) h.w.push_back(int_from_json(c));
  h.theta = int_from_json(j.at("theta"));
  return h;
}

inline json to_json(const LabeledDataset& ds) {
  json points = json::array(), labels = json::array(), weights = json::array();
  for (const Point& p : ds.points) points.push_back(to_json(p));
  for (uint8_t l : ds.labels) labels.push_back(static_cast<int>(l));
  for (const Rat& w : ds.weights) weights.push_back(to_json(w));
  return json{{"d", ds.d}, {"points", points}, {"labels", labels}, {"weights", weights}};
}

inline LabeledDataset dataset_from_json(const json& j) {
  LabeledDataset ds;
  ds.d = j.at("d").get<size_t>();
  for (const auto& p : j.at("points")) ds.points.push_back(point_from_json(p));
  for (const auto& l : j.at("labels")) {
    int v = l.get<int>();
    if (v != 0 && v != 1) throw input_error("label outside {0,1}");
    ds.labels.push_back(static_cast<uint8_t>(v));
  }
  for (const auto& w : j.at("weights")) ds.weights.push_back(rat_from_json(w));
  ds.validate();
  return ds;
}

inline json to_json(const KSumInstance& inst) {
  json lists = json::array();
  for (const auto& list : inst.lists) {
    json row = json::array();
    for (const Int& v : list) row.push_back(to_json(v));
    lists.push_back(row);
  }
  return json{{"k", inst.k}, {"n", inst.n}, {"lists", lists}};
}

inline KSumInstance ksum_from_json(const json& j) {
  KSumInstance inst;
  inst.k = j.at("k").get<int>();
  inst.n = j.at("n").get<int>();
  for (const auto& row : j.at("lists")) {
    std::vector<Int> list;
    for (const auto& v : row) list.push_back(int_from_json(v));
    inst.lists.push_back(std::move(list));
  }
  inst.validate();
  return inst;
}

inline json to_json(const KSumWitness& w) {
  json idx = json::array(), vals = json::array();
  for (size_t i : w.indices) idx.push_back(i);
  for (const Int& v : w.values) vals.push_back(to_json(v));
  return json{{"indices", idx}, {"values", vals}};
}

inline json to_json(const DistanceReport& rep) {
  return json{{"distance", to_json(rep.distance)},
              {"witness", to_json(rep.witness)},
              {"method", method_name(rep.method)},
              {"agreements", to_json(rep.agreements)}};
}

inline DistanceReport report_from_json(const json& j) {
  DistanceReport rep;
  rep.distance = rat_from_json(j.at("distance"));
  rep.witness = halfspace_from_json(j.at("witness"));
  rep.agreements = int_from_json(j.at("agreements"));
  std::string m = j.at("method").get<std::string>();
  if (m == "SEPARABILITY") {
    rep.method = Method::SEPARABILITY;
  } else if (m == "CANDIDATES") {
    rep.method = Method::CANDIDATES;
  } else if (m == "SWEEP_1D") {
    rep.method = Method::SWEEP_1D;
  } else if (m == "SWEEP_2D") {
    rep.method = Method::SWEEP_2D;
  } else {
    throw input_error("unknown method " + m);
  }
  return rep;
}

inline json to_json(const ReducedInstance& red) {
  json meta{{"d", red.d},
            {"n", red.n},
            {"eps", to_json(red.eps)},
            {"threshold", to_json(red.threshold)},
            {"yes_bound", to_json(red.yes_bound)},
            {"no_bound", to_json(red.no_bound)},
            {"coordinate_bound", to_json(red.coord_bound)},
            {"source", to_json(red.source)}};
  json j = to_json(red.dataset);
  j["meta"] = meta;
  return j;
}

/// Reduced instances are rebuilt from their source lists on load; the
/// serialized dataset is then compared against the rebuilt one so a edited
/// file cannot smuggle in an inconsistent support.
inline ReducedInstance reduced_from_json(const json& j) {
  KSumInstance src = ksum_from_json(j.at("meta").at("source"));
  ReducedInstance red = build_reduction(src);
  LabeledDataset stored = dataset_from_json(j);
  if (!(stored.points == red.dataset.points) || stored.labels != red.dataset.labels)
    throw input_error("reduced instance file does not match its source lists");
  return red;
}

inline json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw input_error("malformed JSON in " + path + ": " + e.what());
  }
  return j;
}

inline void save_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw input_error("cannot write " + path);
  out << j.dump(2) << "\n";
}

}  // namespace halfgap
