#pragma once

#include <nhm/adjunction.hpp>
#include <nhm/builders.hpp>
#include <nhm/cochains.hpp>
#include <nhm/cohomology.hpp>
#include <nhm/complex.hpp>
#include <nhm/geometry.hpp>
#include <nhm/io.hpp>
#include <nhm/linalg.hpp>
#include <nhm/rational.hpp>
#include <nhm/report.hpp>
