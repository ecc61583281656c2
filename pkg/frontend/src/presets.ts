// Bundled example matrices.  Upper triangles only; the editor derives the
// reciprocals.

export type Preset = {
  id: string
  name: string
  n: number
  upper: (number | string)[][]
  customWeights?: number[]
}

export const PRESETS: Preset[] = [
  {
    id: 'saaty-demo',
    name: 'Demo 4x4 (inefficient eigenvector)',
    n: 4,
    upper: [
      [1, '1', '4', '9'],
      [0, 1, '7', '5'],
      [0, 0, 1, '4'],
      [0, 0, 0, 1],
    ],
  },
  {
    id: 'powers-of-two',
    name: 'Consistent powers of two',
    n: 4,
    upper: [
      [1, '2', '4', '8'],
      [0, 1, '2', '4'],
      [0, 0, 1, '2'],
      [0, 0, 0, 1],
    ],
    customWeights: [27, 9, 3, 1],
  },
  {
    id: 'all-ones',
    name: 'All ones (3x3)',
    n: 3,
    upper: [
      [1, '1', '1'],
      [0, 1, '1'],
      [0, 0, 1],
    ],
  },
]

export function presetById(id: string): Preset {
  const p = PRESETS.find((x) => x.id === id)
  if (!p) throw new Error(`unknown preset ${id}`)
  return p
}
