#pragma once

#include "aufbau.hpp"
#include "deformation.hpp"
#include "orbital.hpp"
#include "ordering.hpp"
#include "scan.hpp"
#include "spectrum.hpp"
