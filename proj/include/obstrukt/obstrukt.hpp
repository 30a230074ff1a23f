#pragma once

// Everything except the CLI and the test oracles.

#include "obstrukt/complex.hpp"
#include "obstrukt/errors.hpp"
#include "obstrukt/generators.hpp"
#include "obstrukt/geometry.hpp"
#include "obstrukt/io.hpp"
#include "obstrukt/linalg/homology.hpp"
#include "obstrukt/linalg/smith.hpp"
#include "obstrukt/links.hpp"
#include "obstrukt/magnus.hpp"
#include "obstrukt/massey.hpp"
#include "obstrukt/products.hpp"
#include "obstrukt/seeds.hpp"
#include "obstrukt/vk.hpp"
