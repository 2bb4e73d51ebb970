#pragma once

#include <cstddef>
#include <cstdint>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hcdeval/calibration.hpp"
#include "hcdeval/corpus.hpp"
#include "hcdeval/embedstore.hpp"
#include "oracles/oracles.hpp"

namespace testsupport {

inline std::string data_path(const std::string& rel) { return std::string(HCDEVAL_TEST_DATA) + "/" + rel; }

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline hcdeval::corpus::DescriptionRecord human(std::string id, std::string image,
                                                std::string task = "navigation") {
  hcdeval::corpus::DescriptionRecord r;
  r.record_id = std::move(id);
  r.image_id = std::move(image);
  r.task = std::move(task);
  r.task_group = hcdeval::corpus::TaskGroup::Affordances;
  r.generality = hcdeval::corpus::Generality::Specific;
  r.source = hcdeval::corpus::Source::Human;
  r.text = "walk through the door";
  return r;
}

inline hcdeval::corpus::DescriptionRecord model(std::string id, std::string image,
                                                std::string name = "m1",
                                                std::string task = "navigation") {
  auto r = human(std::move(id), std::move(image), std::move(task));
  r.source = hcdeval::corpus::Source::Model;
  r.model_family = "fam";
  r.model_name = std::move(name);
  r.prompt_type = hcdeval::corpus::PromptType::Human;
  return r;
}

// One task, one model, random sizes within the given ranges. Raw vectors are
// kept alongside so oracles can work from the same numbers.
struct HcdFixture {
  std::vector<hcdeval::corpus::DescriptionRecord> records;
  hcdeval::embed::EmbeddingMatrix matrix;
  std::vector<std::vector<oracle::Vec>> humans;  // per image
  std::vector<std::vector<oracle::Vec>> models;  // per image
  std::vector<std::string> image_ids;
};

inline HcdFixture random_hcd_fixture(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> n_img(2, 6), n_h(3, 8), n_m(1, 6), n_dim(3, 16);
  std::normal_distribution<double> g(0.0, 1.0);
  HcdFixture f;
  const int dim = n_dim(rng);
  const int images = n_img(rng);
  f.matrix = hcdeval::embed::EmbeddingMatrix("rand", static_cast<std::size_t>(dim));
  f.humans.resize(images);
  f.models.resize(images);
  for (int i = 0; i < images; ++i) {
    const std::string img = "img" + std::to_string(i);
    f.image_ids.push_back(img);
    oracle::Vec base(dim);
    for (double& x : base) x = 2.0 * g(rng);
    auto draw = [&](double spread) {
      oracle::Vec v(base);
      for (double& x : v) x += spread * g(rng);
      return v;
    };
    const int nh = n_h(rng), nm = n_m(rng);
    for (int h = 0; h < nh; ++h) {
      const std::string id = img + "-h" + std::to_string(h);
      f.records.push_back(human(id, img));
      f.humans[i].push_back(draw(1.0));
      f.matrix.append(id, f.humans[i].back());
    }
    for (int m = 0; m < nm; ++m) {
      const std::string id = img + "-m" + std::to_string(m);
      f.records.push_back(model(id, img));
      f.models[i].push_back(draw(1.5));
      f.matrix.append(id, f.models[i].back());
    }
  }
  return f;
}

}  // namespace testsupport
