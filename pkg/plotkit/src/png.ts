import { writeFileSync } from 'fs';
import { PNG } from 'pngjs';

import { Raster } from './raster';

export function encodePng(raster: Raster): Buffer {
  const png = new PNG({ width: raster.width, height: raster.height });
  raster.data.copy(png.data);
  return PNG.sync.write(png);
}

export function writePng(path: string, raster: Raster): void {
  writeFileSync(path, encodePng(raster));
}
