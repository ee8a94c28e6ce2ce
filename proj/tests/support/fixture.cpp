// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The litkg Authors

#include "fixture.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <unistd.h>

#include "litkg/ingest.hpp"
#include "litkg/service.hpp"

namespace litkg::testing {

namespace fs = std::filesystem;

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Internal;
}

fs::path fixture_dir() { return fs::path(LITKG_FIXTURE_DIR); }

fs::path fixture_data_dir() { return fixture_dir() / "datadir"; }

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<fs::path> fixture_bundle_paths() {
  std::vector<fs::path> out;
  for (const auto& entry : fs::directory_iterator(fixture_data_dir() / "bundles")) {
    if (entry.path().extension() == ".json") out.push_back(entry.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

KnowledgeBase load_fixture_bundles() {
  KnowledgeBase kb;
  for (const auto& p : fixture_bundle_paths()) ingest_bundle(kb, load_document_bundle(p));
  return kb;
}

KnowledgeBase load_fixture_datadir() { return DataStore(fixture_data_dir()).load(); }

TempDir::TempDir() {
  static std::atomic<int> counter{0};
  path_ = fs::temp_directory_path() /
          ("litkg-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter.fetch_add(1)));
  fs::remove_all(path_);
  fs::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  fs::remove_all(path_, ec);
}

namespace {

constexpr std::array<const char*, 6> kSubtypes{"increases^expression", "decreases^expression", "affects^binding",
                                               "therapeutic",          "marker/mechanism",     "biomarker"};
constexpr std::array<Category, 3> kCategories{Category::GeneChemical, Category::ChemicalDisease, Category::GeneDisease};
constexpr std::array<Action, 3> kActions{Action::Increase, Action::Decrease, Action::Affect};

template <typename T>
const T& pick(std::mt19937_64& rng, const std::vector<T>& v) {
  return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
}

template <typename T, std::size_t N>
const T& pick(std::mt19937_64& rng, const std::array<T, N>& v) {
  return v[std::uniform_int_distribution<std::size_t>(0, N - 1)(rng)];
}

std::size_t uniform(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

}  // namespace

RandomGraph make_random_graph(std::mt19937_64& rng, std::size_t max_nodes, std::size_t max_edges) {
  RandomGraph rg;
  const std::size_t n = uniform(rng, 2, max_nodes);
  for (std::size_t i = 0; i < n; ++i) {
    EntityRecord e;
    switch (uniform(rng, 0, 2)) {
      case 0:
        e.id = "GENE:" + std::to_string(1000 + i);
        e.coarse_type = CoarseType::Gene;
        break;
      case 1:
        e.id = "MESH:D" + std::to_string(100000 + i);
        e.coarse_type = CoarseType::Chemical;
        break;
      default:
        e.id = "MESH:C" + std::to_string(200000 + i);
        e.coarse_type = CoarseType::Disease;
        break;
    }
    e.name = "node" + std::to_string(i);
    rg.graph.upsert_entity(e);
    rg.nodes.push_back(e.id);
  }

  std::map<EdgeKey, std::set<std::string>> backing;
  const std::size_t m = uniform(rng, 1, max_edges);
  for (std::size_t i = 0; i < m; ++i) {
    AssertionEdge edge;
    edge.src = pick(rng, rg.nodes);
    // Occasional self loops; traversal must ignore them.
    edge.dst = uniform(rng, 0, 19) == 0 ? edge.src : pick(rng, rg.nodes);
    edge.category = pick(rng, kCategories);
    edge.subtype = pick(rng, kSubtypes);
    edge.action = pick(rng, kActions);
    const std::size_t refs = uniform(rng, 1, 4);
    for (std::size_t r = 0; r < refs; ++r) {
      ProvenanceRef ref{"P" + std::to_string(uniform(rng, 0, 5)), static_cast<std::uint32_t>(uniform(rng, 0, 3)),
                        std::nullopt};
      backing[edge.key()].insert(ref.paper_id);
      edge.provenance.insert(ref);
    }
    rg.graph.add_assertion(edge);
  }
  for (auto& [key, papers] : backing) rg.edges.push_back({key, papers});
  return rg;
}

namespace {

struct PoolEntity {
  const char* raw;
  const char* name;
  const char* coarse;
};

constexpr std::array<PoolEntity, 12> kPool{{
    {"D000001", "Alphamab", "Chemical"},
    {"D000002", "Betacillin", "Chemical"},
    {"C000003", "Gammazole", "Chemical"},
    {"novel agent x", "novel agent X", "Chemical"},
    {"101", "ALPHA1", "Gene"},
    {"102", "BETA2", "Gene"},
    {"103", "GAMMA3", "Gene"},
    {"104", "DELTA4", "Gene"},
    {"D000010", "Fooitis", "Disease"},
    {"D000011", "Barosis", "Disease"},
    {"D000012", "Bazemia", "Disease"},
    {"9606", "human", "Organism"},
}};

constexpr std::array<const char*, 10> kWords{"cells", "were", "treated", "with", "and", "showed",
                                             "reduced", "signal", "in", "vitro"};
constexpr std::array<const char*, 3> kEventTypes{"Phosphorylation", "Binding", "Gene expression"};

}  // namespace

std::string BundleFactory::make(const std::string& paper_id) {
  using nlohmann::ordered_json;
  ++serial_;
  const std::size_t n = uniform(rng_, 2, 5);
  ordered_json sentences = ordered_json::array();
  ordered_json mentions = ordered_json::array();
  std::vector<std::string> mentioned;
  for (std::size_t s = 0; s < n; ++s) {
    std::string text;
    const std::size_t k = uniform(rng_, 0, 3);
    for (std::size_t i = 0; i < k + 2; ++i) {
      if (!text.empty()) text += ' ';
      if (i < k) {
        const auto& e = kPool[uniform(rng_, 0, kPool.size() - 1)];
        std::string name = e.name;
        if (uniform(rng_, 0, 9) < 3) name += " variant";
        const auto start = text.size();
        text += name;
        ordered_json entity = {{"id", e.raw}, {"name", name}, {"coarse_type", e.coarse}};
        if (uniform(rng_, 0, 1)) entity["aliases"] = {std::string(e.name) + "-alias" + std::to_string(uniform(rng_, 0, 2))};
        if (std::string(e.coarse) == "Gene" && uniform(rng_, 0, 1)) entity["fine_types"] = {"ENZYME"};
        mentions.push_back({{"sentence_idx", s}, {"char_span", {start, text.size()}}, {"entity", entity}});
        mentioned.push_back(e.raw);
      } else {
        text += kWords[uniform(rng_, 0, kWords.size() - 1)];
      }
    }
    text += '.';
    sentences.push_back({{"idx", s}, {"section", s == 0 ? "Title" : "Body"}, {"text", text}});
  }

  ordered_json relations = ordered_json::array();
  ordered_json events = ordered_json::array();
  if (!mentioned.empty()) {
    const std::size_t r = uniform(rng_, 0, 4);
    for (std::size_t i = 0; i < r; ++i) {
      relations.push_back({{"src", pick(rng_, mentioned)},
                           {"dst", pick(rng_, mentioned)},
                           {"category", std::string(to_string(pick(rng_, kCategories)))},
                           {"subtype", pick(rng_, kSubtypes)},
                           {"action", std::string(to_string(pick(rng_, kActions)))},
                           {"sentence_idx", uniform(rng_, 0, n - 1)}});
    }
    const std::size_t ev = uniform(rng_, 0, 2);
    for (std::size_t i = 0; i < ev; ++i) {
      events.push_back({{"event_type", pick(rng_, kEventTypes)},
                        {"trigger", kWords[uniform(rng_, 0, 2)]},
                        {"roles", {{"Theme", pick(rng_, mentioned)}}},
                        {"sentence_idx", uniform(rng_, 0, n - 1)}});
    }
  }

  ordered_json bundle = {
      {"paper_id", paper_id},
      {"title", "Synthetic paper " + paper_id + " revision " + std::to_string(serial_)},
      {"authors", {"Tester"}},
      {"affiliations", {uniform(rng_, 0, 1) ? "Lab One" : "Lab Two"}},
      {"acknowledgements", uniform(rng_, 0, 1) ? "Supported by grant 42." : ""},
      {"pub_date", "2020-0" + std::to_string(uniform(rng_, 1, 9)) + "-15"},
      {"peer_reviewed", uniform(rng_, 0, 1) == 1},
      {"sentences", sentences},
      {"mentions", mentions},
      {"relations", relations},
      {"events", events},
  };
  return bundle.dump();
}

}  // namespace litkg::testing
