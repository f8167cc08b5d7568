#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mcera/datagen.hpp"
#include "mcera/dataset.hpp"
#include "mcera/json_writer.hpp"
#include "mcera/oracle.hpp"

// Writes the bundled synthetic fixtures (or a custom planted-truth dataset)
// as FIMI files. The presets carry pinned seeds, so the files regenerate
// byte-identically on any platform.
int main(int argc, char** argv) {
  CLI::App app{"Synthetic transaction dataset generator"};
  std::string preset = "mushroom";
  std::string out_path;
  std::size_t m = 0;
  std::uint64_t seed = 0;
  std::vector<double> probs;
  app.add_option("--preset", preset, "mushroom|chess|bernoulli")
      ->check(CLI::IsMember({"mushroom", "chess", "bernoulli"}));
  app.add_option("--out", out_path, "output FIMI path")->required();
  app.add_option("--m", m, "transactions (bernoulli preset only)");
  app.add_option("--seed", seed, "seed (bernoulli preset only)");
  app.add_option("--probs", probs,
                 "item probabilities (bernoulli preset only)");
  CLI11_PARSE(app, argc, argv);

  try {
    mcera::SampleDataset ds;
    if (preset == "mushroom") {
      ds = mcera::mushroom_fixture();
    } else if (preset == "chess") {
      ds = mcera::chess_fixture();
    } else {
      if (probs.empty() || m == 0) {
        std::cerr << "error: bernoulli preset needs --probs and --m\n";
        return 2;
      }
      ds = mcera::GroundTruth{probs}.generate(m, seed);
    }
    mcera::save_fimi(ds, out_path);
    const mcera::DatasetStats st = mcera::compute_stats(ds);
    mcera::JsonWriter w;
    w.begin_object();
    w.key("out").value(out_path);
    w.key("m").value(static_cast<std::uint64_t>(st.m));
    w.key("alphabet_size").value(static_cast<std::uint64_t>(st.alphabet_size));
    w.key("avg_transaction_len").value(st.avg_transaction_len);
    w.end_object();
    std::cout << w.str() << '\n';
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
