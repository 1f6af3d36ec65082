// Writes the fixture systems and cochains as JSON into the given directory.

#include "fixture_systems.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>

int main(int argc, char** argv) {
  namespace fs = std::filesystem;
  fs::path dir = argc > 1 ? argv[1] : "fixtures";
  fs::create_directories(dir / "cochains");
  for (const auto& [name, make] : nhm::fixtures::all()) {
    std::ofstream(dir / (name + ".json")) << nhm::serialize_system(make()).dump(2) << "\n";
    std::cout << "wrote " << (dir / (name + ".json")).string() << "\n";
  }
  for (const auto& [name, doc] : nhm::fixtures::cochains()) {
    std::ofstream(dir / "cochains" / (name + ".json")) << doc.dump(2) << "\n";
    std::cout << "wrote " << (dir / "cochains" / (name + ".json")).string() << "\n";
  }
}
