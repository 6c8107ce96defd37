/**
 * Scales every component of a vector by a scalar factor.
 *
 * @param vector components to scale
 * @param factor multiplier applied to each component
 * @returns a new array with the scaled components
 */
export function scaleVector(vector: number[], factor: number): number[] {
  const scaled: number[] = [];
  for (const component of vector) {
    if (Number.isFinite(component)) {
      scaled.push(component * factor);
    } else {
      scaled.push(0);
    }
  }
  return scaled;
}

/** Doubles a number when it is small enough to stay safe. */
export function shortBody(x: number): number {
  return x < 1000 ? x * 2 : x;
}
