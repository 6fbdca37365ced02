/** Fixed 20-hue palette; a class keeps its slot via color_index mod 20. */

const PALETTE = [
  "#e6194b", "#3cb44b", "#b8860b", "#4363d8", "#f58231",
  "#911eb4", "#46829b", "#f032e6", "#6b8e23", "#d2691e",
  "#008080", "#9a6324", "#800000", "#2f4f4f", "#808000",
  "#1e90ff", "#c71585", "#556b2f", "#ff4500", "#6a5acd",
] as const;

export function classColor(colorIndex: number): string {
  return PALETTE[((colorIndex % PALETTE.length) + PALETTE.length) % PALETTE.length];
}

export function highlightBackground(colorIndex: number): string {
  return classColor(colorIndex) + "33"; // translucent fill under dark text
}
