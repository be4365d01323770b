#pragma once

#include <compana/asymptotics.hpp>
#include <compana/bigrational.hpp>
#include <compana/composition.hpp>
#include <compana/gamma.hpp>
#include <compana/rng.hpp>
#include <compana/sampling.hpp>
#include <compana/series.hpp>
#include <compana/singularity.hpp>
