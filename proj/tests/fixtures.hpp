#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "eqmix/walk.hpp"

namespace fixtures {

inline eqmix::Graph petersen() {
  eqmix::Graph g;
  g.vertices = 10;
  for (std::size_t i = 0; i < 5; ++i) {
    g.edges.emplace_back(i, (i + 1) % 5);          // outer cycle
    g.edges.emplace_back(i, i + 5);                // spokes
    g.edges.emplace_back(5 + i, 5 + (i + 2) % 5);  // inner pentagram
  }
  return g;
}

inline eqmix::Graph cycle(std::size_t n) {
  eqmix::Graph g;
  g.vertices = n;
  for (std::size_t i = 0; i < n; ++i) g.edges.emplace_back(i, (i + 1) % n);
  return g;
}

inline eqmix::Graph complete(std::size_t n) {
  eqmix::Graph g;
  g.vertices = n;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) g.edges.emplace_back(i, j);
  return g;
}

inline eqmix::Graph path(std::size_t n) {
  eqmix::Graph g;
  g.vertices = n;
  for (std::size_t i = 0; i + 1 < n; ++i) g.edges.emplace_back(i, i + 1);
  return g;
}

inline eqmix::Graph star(std::size_t leaves) {
  eqmix::Graph g;
  g.vertices = leaves + 1;
  for (std::size_t i = 1; i <= leaves; ++i) g.edges.emplace_back(0, i);
  return g;
}

}  // namespace fixtures
